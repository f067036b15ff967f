//! Perfect Mondrian partitions: tilings of a rectangle by pairwise non-congruent rectangles
//! of equal area, constructed and certified with exact algebraic arithmetic.

pub mod app;
pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod extend;
pub mod layouts;
pub mod solver;
pub mod spiral;

pub use error::{MondrianError, Result};
