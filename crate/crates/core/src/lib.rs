pub mod polyexp;
pub mod tolerances;
pub mod frames;
pub mod bjorling;
pub mod laurent;
pub mod weierstrass;
pub mod verify;
pub mod curves;
pub mod meshio;
