//! Physical constants (SI, CODATA 2018).

/// Elementary charge [C].
pub const Q_E: f64 = 1.602176634e-19;

/// Boltzmann constant [J/K].
pub const K_B: f64 = 1.380649e-23;

/// Vacuum permittivity [F/m].
pub const EPS_0: f64 = 8.8541878128e-12;
