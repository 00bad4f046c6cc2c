//! Free modules, matrices, and the functors T₂, ∧², D₂.

pub mod basis;
mod map;
mod matrix;
pub mod vector;

pub use basis::{
    comultiplication, symmetric_product, tensor_index, wedge_projection, wedge_section, DividedSquareBasis,
    TensorSquareBasis, WedgeSquareBasis,
};
pub use map::{comultiply, compose, dualize_map, is_alternating, tensor_map, FreeModule, ModuleMap};
pub use matrix::Matrix;
