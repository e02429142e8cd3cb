//! Exact multilinear algebra for skew-symmetric tensors: wedge products,
//! skew catalecticants, apolar ideals of Grassmannian points, and the
//! classification of trivectors in up to eight variables with explicit
//! minimal decompositions.

pub mod scalar;
pub mod exterior;
pub mod linalg;
pub mod apolarity;
pub mod grassmann;
pub mod atlas;

pub use exterior::Multivector;
pub use scalar::Scalar;
