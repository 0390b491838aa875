//! Real-multiplication accounting.
//!
//! Estimators tally how many times they run each primitive; a [`CostModel`]
//! turns the tally into a real-multiplication count. The rules:
//!
//! * complex × complex = 4, complex × real = 2, real × real = 1;
//! * multiplying by a sign (±1) is free;
//! * each transcendental scalar evaluation (`sin`, `cos`, `sqrt`, `log Phi`,
//!   `phi / Phi`) costs [`CostModel::transcendental`], 10 by default.
//!
//! Per-primitive formulas, with `M` antennas, `N` pilot symbols and `c` the
//! transcendental cost:
//!
//! | primitive | count |
//! |---|---|
//! | steering vector | `c + 1 + (M - 1)(1 + 2c)` |
//! | matched filter `X^H y` | `4MN` |
//! | grid objective `\|a^H z\|^2` | `4M + 2` |
//! | likelihood context | `4MN + 2N` |
//! | ZF projection | `4M + 5 + c` |
//! | likelihood value | `2 + 2MN(2 + c)` |
//! | likelihood value + gradient | `4 + 2MN(4 + 2c)` |
//! | LMMSE filter application | `4M * MN` |

use std::ops::AddAssign;

/// A single countable computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    /// Inner product of two complex vectors of the given length.
    ComplexDot { len: u64 },
    SteeringVector { m: u64 },
    MatchedFilter { m: u64, n: u64 },
    GridObjective { m: u64 },
    Context { m: u64, n: u64 },
    ZfProjection { m: u64 },
    LikelihoodValue { mn: u64 },
    LikelihoodValueGradient { mn: u64 },
    LmmseApply { m: u64, mn: u64 },
}

/// Per-primitive invocation counts for one estimator call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpTally {
    pub m: u64,
    pub n: u64,
    pub steering_vectors: u64,
    pub matched_filters: u64,
    pub grid_objectives: u64,
    pub contexts: u64,
    pub zf_projections: u64,
    pub value_evals: u64,
    pub gradient_evals: u64,
    pub lmmse_applies: u64,
}

impl OpTally {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m: m as u64, n: n as u64, ..Self::default() }
    }
}

impl AddAssign for OpTally {
    fn add_assign(&mut self, rhs: Self) {
        debug_assert!(self.m == rhs.m && self.n == rhs.n);
        self.steering_vectors += rhs.steering_vectors;
        self.matched_filters += rhs.matched_filters;
        self.grid_objectives += rhs.grid_objectives;
        self.contexts += rhs.contexts;
        self.zf_projections += rhs.zf_projections;
        self.value_evals += rhs.value_evals;
        self.gradient_evals += rhs.gradient_evals;
        self.lmmse_applies += rhs.lmmse_applies;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostModel {
    pub transcendental: u64,
}

impl Default for CostModel {
    fn default() -> Self {
        Self { transcendental: 10 }
    }
}

impl CostModel {
    pub fn cost(&self, op: Op) -> u64 {
        let c = self.transcendental;
        match op {
            Op::ComplexDot { len } => 4 * len,
            Op::SteeringVector { m } => c + 1 + m.saturating_sub(1) * (1 + 2 * c),
            Op::MatchedFilter { m, n } => 4 * m * n,
            Op::GridObjective { m } => 4 * m + 2,
            Op::Context { m, n } => 4 * m * n + 2 * n,
            Op::ZfProjection { m } => 4 * m + 5 + c,
            Op::LikelihoodValue { mn } => 2 + 2 * mn * (2 + c),
            Op::LikelihoodValueGradient { mn } => 4 + 2 * mn * (4 + 2 * c),
            Op::LmmseApply { m, mn } => 4 * m * mn,
        }
    }

    /// Total real multiplications for a tally.
    pub fn count_real_mults(&self, tally: &OpTally) -> u64 {
        let (m, n) = (tally.m, tally.n);
        let mn = m * n;
        tally.steering_vectors * self.cost(Op::SteeringVector { m })
            + tally.matched_filters * self.cost(Op::MatchedFilter { m, n })
            + tally.grid_objectives * self.cost(Op::GridObjective { m })
            + tally.contexts * self.cost(Op::Context { m, n })
            + tally.zf_projections * self.cost(Op::ZfProjection { m })
            + tally.value_evals * self.cost(Op::LikelihoodValue { mn })
            + tally.gradient_evals * self.cost(Op::LikelihoodValueGradient { mn })
            + tally.lmmse_applies * self.cost(Op::LmmseApply { m, mn })
    }
}
