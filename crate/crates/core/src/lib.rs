pub mod bicomplex;
pub mod error;
pub mod hilbert;
pub mod params;
pub mod quadrature;
pub mod special;
pub mod spectrum;
pub mod surfaces;
pub mod verify;
