//! Central tolerance constants.
//!
//! Every threshold that decides a verdict lives here with its rationale, so
//! numerical policy is auditable in one place.

/// Relative boundary-decay bound enforced by `differentiate` on raw input:
/// |f| at the outermost two samples of the axis must not exceed this times
/// max|f|. Analytic compactly supported data sits at exact zero there.
pub const BOUNDARY_REL_STRICT: f64 = 1e-12;

/// Relative boundary-decay bound used inside operator chains. Repeated
/// spectral derivatives of a resolved bump accumulate edge ringing up to
/// about 1e-4 relative at n = 128, while a genuine wrap-around failure
/// shows O(1) boundary mass; this tier separates the two.
pub const BOUNDARY_REL_COMPOSED: f64 = 1e-3;

/// Unitarity defect allowed for the forward/inverse transform pair and for
/// pure translation/phase group factors.
pub const PLANCHEREL_REL: f64 = 1e-10;

/// Obstruction verdict: max per-slice integral must stay below
/// this factor times ‖g‖ times the integrated axis length.
pub const OBSTRUCTION_REL_FACTOR: f64 = 1e-8;

/// |det - 1| allowed for the 2x2 matrix part of a group element.
pub const DET_TOL: f64 = 1e-12;

/// Absolute floor for multiplier denominators evaluated on the support of
/// the input; below it the group action is declared singular.
pub const SINGULAR_DENOM_ABS: f64 = 1e-9;

/// Relative magnitude that counts as "support" when forward-mapping sample
/// points for range checks.
pub const SUPPORT_REL: f64 = 1e-12;

/// Fourier-side division: if the three smallest-|ξ| bins carry more than
/// this factor times the median bin energy of |ĝ/ξ|², flag divergence.
pub const DIVERGENCE_ENERGY_FACTOR: f64 = 1e3;

/// Fitted-exponent threshold separating Converges from Diverges verdicts.
pub const EXPONENT_THRESHOLD: f64 = 0.5;

/// Slack multiplier on the primitive-solve norm bound
/// ‖f‖ ≤ 2(‖g‖ + ‖Y₁g‖ + ‖Y₁²g‖).
pub const NORM_BOUND_SLACK: f64 = 1.01;

/// Agreement required between a fiber-restricted 3-D action and the 2-D
/// fiber model, and between one-shot and sequential group applications.
pub const GROUP_COMPAT_REL: f64 = 1e-4;

/// Residual bound for commutator identities on desk-scale grids.
pub const BRACKET_REL: f64 = 1e-4;

/// Unitarity defect allowed for resampled (interpolated) group factors.
pub const RESAMPLED_UNITARITY_REL: f64 = 1e-3;
