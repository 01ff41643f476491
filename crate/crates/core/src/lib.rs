pub mod arrangement;
pub mod bits;
pub mod cube;
pub mod linalg;
pub mod lp;
pub mod slice;
pub mod canon;
pub mod combtype;
pub mod classifier;
pub mod color_class;
pub mod report;
