pub mod cayley;
pub mod error;
pub mod graph;
pub mod paths;

pub use cayley::{CayleyBall, Element, GroupModel, Letter, Translation};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeWeights, Graph};
pub mod entourage;
pub mod floyd;
pub mod divider;
pub mod visibility;
pub mod althyp;
pub mod thin;
pub mod fineness;
pub mod karlsson;
pub mod io;
pub mod fixtures;
pub mod sample;
