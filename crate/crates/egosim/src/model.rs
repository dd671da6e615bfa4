//! Shared domain types: model parameters, ego networks, and conflict graphs.
//!
//! Everything here is an immutable value type after construction; invariants
//! are enforced by the constructors so downstream code can rely on them
//! without re-checking.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Tolerance when checking that an explicitly given debrief factor agrees
/// with the product of its two components.
pub const GAMMA_CONSISTENCY_TOL: f64 = 1e-12;

/// Shared feasibility slack for floating-point capacity comparisons.
pub const FEAS_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid `{field}`: {message}")]
    InvalidParam { field: &'static str, message: String },
}

impl ModelError {
    pub(crate) fn invalid(field: &'static str, message: impl Into<String>) -> Self {
        ModelError::InvalidParam {
            field,
            message: message.into(),
        }
    }

    /// Name of the offending field.
    pub fn field(&self) -> &'static str {
        match self {
            ModelError::InvalidParam { field, .. } => field,
        }
    }
}

/// Debrief factor from conversation compression and avatar cue fidelity.
///
/// One avatar hour condenses to `compression_c * cue_delta` hours of debrief.
pub fn derive_gamma(compression_c: f64, cue_delta: f64) -> Result<f64, ModelError> {
    if !(compression_c > 0.0 && compression_c <= 1.0) {
        return Err(ModelError::invalid(
            "compression_c",
            format!("must be in (0, 1], got {compression_c}"),
        ));
    }
    if !(cue_delta > 0.0) || !cue_delta.is_finite() {
        return Err(ModelError::invalid(
            "cue_delta",
            format!("must be a positive finite number, got {cue_delta}"),
        ));
    }
    Ok(compression_c * cue_delta)
}

/// Scalar constants of the time model.
///
/// Units are hours and days throughout: budgets are hours/year, the horizon
/// is a count of day slots indexed `1..=horizon_days`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    /// Hours an avatar must spend to match one hour of in-person presence.
    pub beta: f64,
    /// Debrief hours per avatar hour. Equals `compression_c * cue_delta`
    /// when the factors are given.
    pub gamma: f64,
    /// Conversation compression ratio behind `gamma`, when known.
    pub compression_c: Option<f64>,
    /// Social cuing efficiency behind `gamma`, when known.
    pub cue_delta: Option<f64>,
    /// Avatar hours available per year.
    pub avatar_budget: f64,
    /// Attention-span bound on total yearly debrief hours.
    pub z_max: f64,
    /// Usable hours in one day slot.
    pub slot_hours: f64,
    /// Number of day slots in the scheduling year.
    pub horizon_days: u32,
    /// Actual yearly capacity of the user; `None` means it matches the
    /// paired network's baseline demand.
    pub x_prime: Option<f64>,
    /// Per-alter presence factors overriding `beta`. Accepted for forward
    /// compatibility; the shipped solvers use the scalar.
    pub beta_per_alter: Option<Vec<f64>>,
}

impl ModelParams {
    pub fn builder() -> ParamsBuilder {
        ParamsBuilder::new()
    }

    /// The user's actual yearly capacity when paired with `network`.
    pub fn effective_x_prime(&self, network: &EgoNetwork) -> f64 {
        self.x_prime.unwrap_or_else(|| network.baseline_capacity())
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        ParamsBuilder::new().build().expect("default parameters are valid")
    }
}

/// Builder for [`ModelParams`].
///
/// `gamma` may be given directly or derived from `(compression_c,
/// cue_delta)`. Giving all three requires them to be consistent within
/// [`GAMMA_CONSISTENCY_TOL`].
#[derive(Debug, Clone)]
pub struct ParamsBuilder {
    beta: f64,
    compression_c: Option<f64>,
    cue_delta: Option<f64>,
    gamma: Option<f64>,
    avatar_budget: f64,
    z_max: f64,
    slot_hours: f64,
    horizon_days: u32,
    x_prime: Option<f64>,
    beta_per_alter: Option<Vec<f64>>,
}

impl Default for ParamsBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl ParamsBuilder {
    pub fn new() -> Self {
        ParamsBuilder {
            beta: 1.29,
            compression_c: None,
            cue_delta: None,
            gamma: None,
            avatar_budget: 0.0,
            z_max: 304.0,
            slot_hours: 8.0,
            horizon_days: 364,
            x_prime: None,
            beta_per_alter: None,
        }
    }

    pub fn beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn compression(mut self, compression_c: f64, cue_delta: f64) -> Self {
        self.compression_c = Some(compression_c);
        self.cue_delta = Some(cue_delta);
        self
    }

    pub fn gamma(mut self, gamma: f64) -> Self {
        self.gamma = Some(gamma);
        self
    }

    pub fn avatar_budget(mut self, hours: f64) -> Self {
        self.avatar_budget = hours;
        self
    }

    pub fn z_max(mut self, hours: f64) -> Self {
        self.z_max = hours;
        self
    }

    pub fn slot_hours(mut self, hours: f64) -> Self {
        self.slot_hours = hours;
        self
    }

    pub fn horizon_days(mut self, days: u32) -> Self {
        self.horizon_days = days;
        self
    }

    pub fn x_prime(mut self, hours: f64) -> Self {
        self.x_prime = Some(hours);
        self
    }

    pub fn beta_per_alter(mut self, factors: Vec<f64>) -> Self {
        self.beta_per_alter = Some(factors);
        self
    }

    pub fn build(self) -> Result<ModelParams, ModelError> {
        let (compression_c, cue_delta, gamma) = match (self.compression_c, self.cue_delta, self.gamma) {
            // Nothing given: defaults for both factors, debrief factor derived.
            (None, None, None) => {
                let c = 0.54;
                let d = 7.0 / 6.0;
                (Some(c), Some(d), derive_gamma(c, d)?)
            }
            (Some(c), Some(d), None) => (Some(c), Some(d), derive_gamma(c, d)?),
            (None, None, Some(g)) => (None, None, g),
            (Some(c), Some(d), Some(g)) => {
                let derived = derive_gamma(c, d)?;
                if (g - derived).abs() > GAMMA_CONSISTENCY_TOL {
                    return Err(ModelError::invalid(
                        "gamma",
                        format!("{g} disagrees with compression_c * cue_delta = {derived}"),
                    ));
                }
                (Some(c), Some(d), g)
            }
            _ => {
                return Err(ModelError::invalid(
                    "compression_c",
                    "compression_c and cue_delta must be given together",
                ))
            }
        };
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(ModelError::invalid("beta", format!("must be > 0, got {}", self.beta)));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(ModelError::invalid("gamma", format!("must be in [0, 1], got {gamma}")));
        }
        if !(self.avatar_budget >= 0.0) || !self.avatar_budget.is_finite() {
            return Err(ModelError::invalid(
                "avatar_budget",
                format!("must be >= 0, got {}", self.avatar_budget),
            ));
        }
        if !(self.z_max >= 0.0) || !self.z_max.is_finite() {
            return Err(ModelError::invalid("z_max", format!("must be >= 0, got {}", self.z_max)));
        }
        if !(self.slot_hours > 0.0) || !self.slot_hours.is_finite() {
            return Err(ModelError::invalid(
                "slot_hours",
                format!("must be > 0, got {}", self.slot_hours),
            ));
        }
        if self.horizon_days < 1 {
            return Err(ModelError::invalid("horizon_days", "must be at least 1"));
        }
        if let Some(xp) = self.x_prime {
            if !(xp >= 0.0) || !xp.is_finite() {
                return Err(ModelError::invalid("x_prime", format!("must be >= 0, got {xp}")));
            }
        }
        if let Some(factors) = &self.beta_per_alter {
            if factors.iter().any(|b| !(*b > 0.0) || !b.is_finite()) {
                return Err(ModelError::invalid("beta_per_alter", "all factors must be > 0"));
            }
        }
        Ok(ModelParams {
            beta: self.beta,
            gamma,
            compression_c,
            cue_delta,
            avatar_budget: self.avatar_budget,
            z_max: self.z_max,
            slot_hours: self.slot_hours,
            horizon_days: self.horizon_days,
            x_prime: self.x_prime,
            beta_per_alter: self.beta_per_alter,
        })
    }
}

/// Ego-network layer, from strongest ties outwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    Support,
    Sympathy,
    Active,
}

impl Layer {
    pub const ALL: [Layer; 3] = [Layer::Support, Layer::Sympathy, Layer::Active];

    pub fn as_str(&self) -> &'static str {
        match self {
            Layer::Support => "support",
            Layer::Sympathy => "sympathy",
            Layer::Active => "active",
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Layer {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "support" => Ok(Layer::Support),
            "sympathy" => Ok(Layer::Sympathy),
            "active" => Ok(Layer::Active),
            other => Err(ModelError::invalid("layer", format!("unknown layer `{other}`"))),
        }
    }
}

/// One member of the ego network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alter {
    /// Dense index, `0..n` within a network.
    pub id: u32,
    pub layer: Layer,
    /// Yearly in-person hours this alter expects.
    pub annual_demand: f64,
}

/// The ego's contact network with cached total demand.
#[derive(Debug, Clone, PartialEq)]
pub struct EgoNetwork {
    alters: Vec<Alter>,
    baseline_capacity: f64,
}

impl EgoNetwork {
    /// Alters must carry dense ids `0..n` in order, each with positive demand.
    pub fn new(alters: Vec<Alter>) -> Result<Self, ModelError> {
        if alters.is_empty() {
            return Err(ModelError::invalid("alters", "a network needs at least one alter"));
        }
        for (i, alter) in alters.iter().enumerate() {
            if alter.id != i as u32 {
                return Err(ModelError::invalid(
                    "alter_id",
                    format!("expected dense id {i}, got {}", alter.id),
                ));
            }
            if !(alter.annual_demand > 0.0) || !alter.annual_demand.is_finite() {
                return Err(ModelError::invalid(
                    "annual_demand",
                    format!("alter {} must demand > 0 hours, got {}", alter.id, alter.annual_demand),
                ));
            }
        }
        let baseline_capacity = alters.iter().map(|a| a.annual_demand).sum();
        Ok(EgoNetwork {
            alters,
            baseline_capacity,
        })
    }

    pub fn alters(&self) -> &[Alter] {
        &self.alters
    }

    pub fn len(&self) -> usize {
        self.alters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alters.is_empty()
    }

    /// Total yearly in-person hours demanded by all alters.
    pub fn baseline_capacity(&self) -> f64 {
        self.baseline_capacity
    }

    pub fn demand_of(&self, alter_id: u32) -> f64 {
        self.alters[alter_id as usize].annual_demand
    }

    pub fn layer_count(&self, layer: Layer) -> usize {
        self.alters.iter().filter(|a| a.layer == layer).count()
    }
}

/// Pairs of alters that cannot both be met in person on the same day.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    n: u32,
    edges: BTreeSet<(u32, u32)>,
}

impl ConflictGraph {
    /// Edges are normalized to `(lo, hi)` and deduplicated. Self-loops and
    /// endpoints `>= n` are rejected.
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, ModelError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(ModelError::invalid("edges", format!("self-loop on alter {a}")));
            }
            if a >= n || b >= n {
                return Err(ModelError::invalid(
                    "edges",
                    format!("edge ({a}, {b}) has an endpoint outside 0..{n}"),
                ));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(ConflictGraph { n, edges: set })
    }

    /// Stores edges as given, without validation. Intended for building
    /// diagnostic reports over raw data; prefer [`ConflictGraph::new`].
    pub fn new_unchecked(n: u32, edges: BTreeSet<(u32, u32)>) -> Self {
        ConflictGraph { n, edges }
    }

    pub fn empty(n: u32) -> Self {
        ConflictGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn conflicts(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Row-major `n * n` adjacency lookup.
    pub fn adjacency(&self) -> Vec<bool> {
        let n = self.n as usize;
        let mut adj = vec![false; n * n];
        for (a, b) in self.edges() {
            let (a, b) = (a as usize, b as usize);
            if a < n && b < n {
                adj[a * n + b] = true;
                adj[b * n + a] = true;
            }
        }
        adj
    }
}

/// One failed instance check; an empty list means the instance is usable.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceViolation {
    pub check: &'static str,
    pub message: String,
}

/// Report-style consistency check of a (network, conflicts, params) triple.
pub fn validate_instance(
    network: &EgoNetwork,
    conflicts: &ConflictGraph,
    params: &ModelParams,
) -> Vec<InstanceViolation> {
    let mut violations = Vec::new();
    let baseline = network.baseline_capacity();
    if let Some(xp) = params.x_prime {
        if !(xp >= 0.0) || !xp.is_finite() {
            violations.push(InstanceViolation {
                check: "x_prime",
                message: format!("actual capacity must be >= 0, got {xp}"),
            });
        } else if xp > baseline + FEAS_EPS {
            violations.push(InstanceViolation {
                check: "x_prime",
                message: format!("actual capacity exceeds baseline capacity: {xp} > {baseline}"),
            });
        }
    }
    if conflicts.n() as usize != network.len() {
        violations.push(InstanceViolation {
            check: "conflict_graph",
            message: format!(
                "conflict graph is over {} alters but the network has {}",
                conflicts.n(),
                network.len()
            ),
        });
    }
    for (a, b) in conflicts.edges() {
        if a == b {
            violations.push(InstanceViolation {
                check: "conflict_graph",
                message: format!("self-loop on alter {a}"),
            });
        } else if a >= conflicts.n() || b >= conflicts.n() {
            violations.push(InstanceViolation {
                check: "conflict_graph",
                message: format!("edge ({a}, {b}) has an endpoint outside 0..{}", conflicts.n()),
            });
        }
    }
    if !(params.beta > 0.0) {
        violations.push(InstanceViolation {
            check: "beta",
            message: format!("must be > 0, got {}", params.beta),
        });
    }
    if !(0.0..=1.0).contains(&params.gamma) {
        violations.push(InstanceViolation {
            check: "gamma",
            message: format!("must be in [0, 1], got {}", params.gamma),
        });
    }
    if !(params.avatar_budget >= 0.0) {
        violations.push(InstanceViolation {
            check: "avatar_budget",
            message: format!("must be >= 0, got {}", params.avatar_budget),
        });
    }
    if !(params.z_max >= 0.0) {
        violations.push(InstanceViolation {
            check: "z_max",
            message: format!("must be >= 0, got {}", params.z_max),
        });
    }
    if !(params.slot_hours > 0.0) {
        violations.push(InstanceViolation {
            check: "slot_hours",
            message: format!("must be > 0, got {}", params.slot_hours),
        });
    }
    if params.horizon_days < 1 {
        violations.push(InstanceViolation {
            check: "horizon_days",
            message: "must be at least 1".to_string(),
        });
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_from_reported_factors() {
        let g = derive_gamma(0.54, 7.0 / 6.0).unwrap();
        assert!((g - 0.63).abs() <= GAMMA_CONSISTENCY_TOL);
    }

    #[test]
    fn gamma_identity_and_product() {
        assert_eq!(derive_gamma(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(derive_gamma(0.5, 0.5).unwrap(), 0.25);
    }

    #[test]
    fn gamma_rejects_out_of_range_inputs() {
        assert_eq!(derive_gamma(0.0, 1.0).unwrap_err().field(), "compression_c");
        assert_eq!(derive_gamma(1.2, 1.0).unwrap_err().field(), "compression_c");
        assert_eq!(derive_gamma(0.5, 0.0).unwrap_err().field(), "cue_delta");
        assert_eq!(derive_gamma(0.5, -1.0).unwrap_err().field(), "cue_delta");
    }

    #[test]
    fn default_params_match_grounded_values() {
        let p = ModelParams::default();
        assert_eq!(p.beta, 1.29);
        assert!((p.gamma - 0.63).abs() <= GAMMA_CONSISTENCY_TOL);
        assert_eq!(p.z_max, 304.0);
        assert_eq!(p.slot_hours, 8.0);
        assert_eq!(p.horizon_days, 364);
    }

    #[test]
    fn explicit_gamma_must_match_factors() {
        let err = ParamsBuilder::new()
            .compression(0.5, 0.5)
            .gamma(0.3)
            .build()
            .unwrap_err();
        assert_eq!(err.field(), "gamma");

        let ok = ParamsBuilder::new().compression(0.5, 0.5).gamma(0.25).build();
        assert!(ok.is_ok());
    }

    #[test]
    fn gamma_alone_overrides_default_factors() {
        let p = ParamsBuilder::new().gamma(0.2).build().unwrap();
        assert_eq!(p.gamma, 0.2);
        assert_eq!(p.compression_c, None);
        assert_eq!(p.cue_delta, None);
    }

    #[test]
    fn lone_factor_is_rejected() {
        let err = ParamsBuilder {
            compression_c: Some(0.5),
            ..ParamsBuilder::new()
        }
        .build()
        .unwrap_err();
        assert_eq!(err.field(), "compression_c");
    }

    fn tiny_network() -> EgoNetwork {
        EgoNetwork::new(vec![
            Alter {
                id: 0,
                layer: Layer::Support,
                annual_demand: 40.0,
            },
            Alter {
                id: 1,
                layer: Layer::Active,
                annual_demand: 15.0,
            },
        ])
        .unwrap()
    }

    #[test]
    fn network_caches_exact_demand_sum() {
        let net = tiny_network();
        assert_eq!(net.baseline_capacity(), 55.0);
        assert_eq!(net.len(), 2);
    }

    #[test]
    fn network_rejects_bad_alters() {
        assert!(EgoNetwork::new(vec![]).is_err());
        let gap = EgoNetwork::new(vec![Alter {
            id: 1,
            layer: Layer::Active,
            annual_demand: 1.0,
        }]);
        assert_eq!(gap.unwrap_err().field(), "alter_id");
        let nonpos = EgoNetwork::new(vec![Alter {
            id: 0,
            layer: Layer::Active,
            annual_demand: 0.0,
        }]);
        assert_eq!(nonpos.unwrap_err().field(), "annual_demand");
    }

    #[test]
    fn conflict_graph_normalizes_and_validates() {
        let g = ConflictGraph::new(4, vec![(2, 1), (1, 2), (0, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.conflicts(1, 2));
        assert!(g.conflicts(2, 1));
        assert!(!g.conflicts(0, 1));

        assert!(ConflictGraph::new(4, vec![(3, 3)]).is_err());
        assert!(ConflictGraph::new(4, vec![(0, 4)]).is_err());
    }

    #[test]
    fn valid_instance_yields_empty_report() {
        let net = tiny_network();
        let g = ConflictGraph::empty(2);
        let params = ModelParams::default();
        assert!(validate_instance(&net, &g, &params).is_empty());
    }

    #[test]
    fn overbudget_capacity_is_reported() {
        let net = tiny_network();
        let g = ConflictGraph::empty(2);
        let params = ParamsBuilder::new().x_prime(56.0).build().unwrap();
        let report = validate_instance(&net, &g, &params);
        assert!(report
            .iter()
            .any(|v| v.message.contains("capacity exceeds baseline")));
    }

    #[test]
    fn self_loop_is_reported() {
        let net = tiny_network();
        let mut edges = BTreeSet::new();
        edges.insert((1, 1));
        let g = ConflictGraph::new_unchecked(2, edges);
        let report = validate_instance(&net, &g, &ModelParams::default());
        assert!(report.iter().any(|v| v.message.contains("self-loop")));
    }

    #[test]
    fn layer_round_trips_through_strings() {
        for layer in Layer::ALL {
            assert_eq!(layer.as_str().parse::<Layer>().unwrap(), layer);
        }
        assert!("inner".parse::<Layer>().is_err());
    }
}
