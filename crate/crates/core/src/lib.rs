//! Exact arithmetic and density certificates for rational points on del Pezzo
//! surfaces of degree 1, y² = x³ + f(z,w)x + g(z,w) in ℙ(2,3,1,1).

pub mod exactalg;
pub mod weier;
pub mod dp1;
pub mod cq5;
pub mod genus1;
pub mod certify;
mod error;
pub use error::Error;
pub type Result<T, E = Error> = std::result::Result<T, E>;
