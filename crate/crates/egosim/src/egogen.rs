//! Seeded generation of layered ego networks and conflict graphs.
//!
//! Networks follow the three-circle layout observed in human ego networks:
//! a small support clique, a sympathy group around it, and a wide active
//! layer. Alters are apportioned to layers in the ratio of the average
//! cumulative layer sizes, and each alter's yearly demand is drawn around
//! its layer's per-alter mean.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, StandardNormal};

use crate::model::{Alter, ConflictGraph, EgoNetwork, Layer, ModelError};
use crate::seed;

/// Average cumulative layer sizes: support clique, sympathy group, active
/// network.
pub const DEFAULT_CUMULATIVE_SIZES: [f64; 3] = [4.6, 14.3, 132.5];

/// Yearly hours spent per alter in each (marginal) layer.
pub const DEFAULT_PER_ALTER_HOURS: [f64; 3] = [74.0, 38.72, 8.81];

/// Default multiplicative demand jitter (sigma of a lognormal factor).
pub const DEFAULT_DEMAND_JITTER_SIGMA: f64 = 0.25;

// Network-size distribution. The observed 10th/50th/90th percentiles are
// (68, 126, 170); a two-parameter lognormal cannot hit all three, so this is
// the minimax fit in log space (each quantile lands within ~9%).
const SIZE_LN_MU: f64 = 4.757;
const SIZE_LN_SIGMA: f64 = 0.3575;
const SIZE_MIN: u32 = 20;
const SIZE_MAX: u32 = 250;

/// Layer statistics driving network generation.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerStats {
    cumulative_sizes: [f64; 3],
    per_alter_hours: [f64; 3],
    demand_jitter_sigma: f64,
}

impl LayerStats {
    /// Cumulative sizes must be strictly increasing and per-alter hours
    /// strictly decreasing from the inner layer outwards. A jitter sigma of
    /// zero disables demand jitter.
    pub fn new(
        cumulative_sizes: [f64; 3],
        per_alter_hours: [f64; 3],
        demand_jitter_sigma: f64,
    ) -> Result<Self, ModelError> {
        if !(cumulative_sizes[0] > 0.0
            && cumulative_sizes[0] < cumulative_sizes[1]
            && cumulative_sizes[1] < cumulative_sizes[2])
        {
            return Err(ModelError::invalid(
                "cumulative_sizes",
                "must be positive and strictly increasing",
            ));
        }
        if !(per_alter_hours[2] > 0.0
            && per_alter_hours[0] > per_alter_hours[1]
            && per_alter_hours[1] > per_alter_hours[2])
        {
            return Err(ModelError::invalid(
                "per_alter_hours",
                "must be positive and strictly decreasing from inner to outer layer",
            ));
        }
        if !(demand_jitter_sigma >= 0.0) || !demand_jitter_sigma.is_finite() {
            return Err(ModelError::invalid(
                "demand_jitter_sigma",
                format!("must be >= 0, got {demand_jitter_sigma}"),
            ));
        }
        Ok(LayerStats {
            cumulative_sizes,
            per_alter_hours,
            demand_jitter_sigma,
        })
    }

    pub fn without_jitter(mut self) -> Self {
        self.demand_jitter_sigma = 0.0;
        self
    }

    pub fn cumulative_sizes(&self) -> [f64; 3] {
        self.cumulative_sizes
    }

    pub fn per_alter_hours(&self) -> [f64; 3] {
        self.per_alter_hours
    }

    pub fn demand_jitter_sigma(&self) -> f64 {
        self.demand_jitter_sigma
    }

    /// Expected alters per layer counting each layer only once (layers are
    /// nested, so outer weights are differences of cumulative sizes).
    pub fn marginal_weights(&self) -> [f64; 3] {
        [
            self.cumulative_sizes[0],
            self.cumulative_sizes[1] - self.cumulative_sizes[0],
            self.cumulative_sizes[2] - self.cumulative_sizes[1],
        ]
    }
}

impl Default for LayerStats {
    fn default() -> Self {
        LayerStats {
            cumulative_sizes: DEFAULT_CUMULATIVE_SIZES,
            per_alter_hours: DEFAULT_PER_ALTER_HOURS,
            demand_jitter_sigma: DEFAULT_DEMAND_JITTER_SIGMA,
        }
    }
}

/// Largest-remainder apportionment of `n` seats over `weights`.
fn apportion(n: u32, weights: [f64; 3]) -> [u32; 3] {
    let total: f64 = weights.iter().sum();
    let quotas: Vec<f64> = weights.iter().map(|w| n as f64 * w / total).collect();
    let mut counts: [u32; 3] = [0; 3];
    let mut assigned = 0;
    for (i, q) in quotas.iter().enumerate() {
        counts[i] = q.floor() as u32;
        assigned += counts[i];
    }
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    let mut remaining = n - assigned;
    for &i in order.iter().cycle() {
        if remaining == 0 {
            break;
        }
        counts[i] += 1;
        remaining -= 1;
    }
    counts
}

/// Draws one network size from the truncated lognormal size distribution.
pub fn sample_network_size(rng: &mut ChaCha8Rng) -> u32 {
    let dist = LogNormal::new(SIZE_LN_MU, SIZE_LN_SIGMA).expect("valid lognormal parameters");
    loop {
        let n = dist.sample(rng).round();
        if n >= SIZE_MIN as f64 && n <= SIZE_MAX as f64 {
            return n as u32;
        }
    }
}

/// Seeded batch of network sizes, for size-distribution reporting.
pub fn sample_network_sizes(seed: u64, draws: usize) -> Vec<u32> {
    let mut rng = seed::rng(seed);
    (0..draws).map(|_| sample_network_size(&mut rng)).collect()
}

/// Generates a layered ego network.
///
/// Without `size_override` the alter count is sampled from the size
/// distribution; with it, exactly that many alters are produced (at least 3).
/// Identical inputs produce field-for-field identical networks.
pub fn generate_ego_network(
    seed: u64,
    stats: &LayerStats,
    size_override: Option<u32>,
) -> Result<EgoNetwork, ModelError> {
    if let Some(n) = size_override {
        if n < 3 {
            return Err(ModelError::invalid(
                "size_override",
                format!("must be at least 3, got {n}"),
            ));
        }
    }
    let mut rng = seed::rng(seed);
    let n = match size_override {
        Some(n) => n,
        None => sample_network_size(&mut rng),
    };
    let counts = apportion(n, stats.marginal_weights());
    let hours = stats.per_alter_hours();
    let sigma = stats.demand_jitter_sigma();
    let mut alters = Vec::with_capacity(n as usize);
    let mut id = 0u32;
    for (layer_idx, layer) in Layer::ALL.iter().enumerate() {
        for _ in 0..counts[layer_idx] {
            let mean = hours[layer_idx];
            let demand = if sigma > 0.0 {
                let z: f64 = StandardNormal.sample(&mut rng);
                mean * (sigma * z).exp()
            } else {
                mean
            };
            alters.push(Alter {
                id,
                layer: *layer,
                annual_demand: demand,
            });
            id += 1;
        }
    }
    EgoNetwork::new(alters)
}

/// Generates a conflict graph with `round(density * n(n-1)/2)` edges sampled
/// uniformly without replacement.
pub fn generate_conflict_graph(seed: u64, n: u32, density: f64) -> Result<ConflictGraph, ModelError> {
    if n < 1 {
        return Err(ModelError::invalid("n", "must be at least 1"));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(ModelError::invalid(
            "density",
            format!("must be in [0, 1], got {density}"),
        ));
    }
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            pairs.push((a, b));
        }
    }
    let m = (density * pairs.len() as f64).round() as usize;
    let mut rng = seed::rng(seed);
    let chosen = rand::seq::index::sample(&mut rng, pairs.len(), m);
    ConflictGraph::new(n, chosen.iter().map(|i| pairs[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apportionment_is_exact_and_deterministic() {
        let stats = LayerStats::default();
        for n in [3u32, 20, 68, 126, 132, 170, 250] {
            let counts = apportion(n, stats.marginal_weights());
            assert_eq!(counts.iter().sum::<u32>(), n, "n={n}");
        }
        assert_eq!(apportion(132, stats.marginal_weights()), [4, 10, 118]);
    }

    #[test]
    fn same_seed_reproduces_the_network() {
        let stats = LayerStats::default();
        let a = generate_ego_network(99, &stats, None).unwrap();
        let b = generate_ego_network(99, &stats, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn jitter_free_capacity_matches_layer_means() {
        let stats = LayerStats::default().without_jitter();
        let net = generate_ego_network(5, &stats, Some(132)).unwrap();
        let counts = apportion(132, stats.marginal_weights());
        let hours = stats.per_alter_hours();
        let expected: f64 = (0..3).map(|i| counts[i] as f64 * hours[i]).sum();
        let got = net.baseline_capacity();
        assert!(
            (got - expected).abs() <= 1e-9 * expected,
            "got {got}, expected {expected}"
        );
        // A 132-alter network should sit close to the expected yearly
        // socialization budget of 8760 * 0.2 = 1752 hours.
        assert!((got - 1752.0).abs() / 1752.0 < 0.05, "got {got}");
    }

    #[test]
    fn every_alter_sits_in_exactly_one_layer() {
        let net = generate_ego_network(11, &LayerStats::default(), Some(68)).unwrap();
        let by_layer: usize = Layer::ALL.iter().map(|l| net.layer_count(*l)).sum();
        assert_eq!(by_layer, net.len());
        assert_eq!(net.len(), 68);
    }

    #[test]
    fn override_below_three_is_rejected() {
        let err = generate_ego_network(1, &LayerStats::default(), Some(2)).unwrap_err();
        assert_eq!(err.field(), "size_override");
    }

    #[test]
    fn sizes_stay_in_bounds() {
        let sizes = sample_network_sizes(3, 500);
        assert!(sizes.iter().all(|&n| (20..=250).contains(&n)));
    }

    #[test]
    fn conflict_graph_edge_counts() {
        assert_eq!(generate_conflict_graph(1, 68, 0.0).unwrap().edge_count(), 0);
        // round(0.4 * 68 * 67 / 2) = 911
        assert_eq!(generate_conflict_graph(1, 68, 0.4).unwrap().edge_count(), 911);
        let complete = generate_conflict_graph(1, 4, 1.0).unwrap();
        assert_eq!(complete.edge_count(), 6);
    }

    #[test]
    fn conflict_graph_rejects_bad_density() {
        assert!(generate_conflict_graph(1, 4, 1.2).is_err());
        assert!(generate_conflict_graph(1, 4, -0.1).is_err());
    }

    #[test]
    fn conflict_graph_is_seed_deterministic() {
        let a = generate_conflict_graph(42, 30, 0.3).unwrap();
        let b = generate_conflict_graph(42, 30, 0.3).unwrap();
        assert_eq!(a, b);
        let c = generate_conflict_graph(43, 30, 0.3).unwrap();
        assert_ne!(a, c);
    }
}
