pub mod poly;
pub mod scalar;
pub mod groebner;
pub mod linalg;
pub mod milnor;
pub mod efmod;
pub mod pipeline;
pub mod corpus;
