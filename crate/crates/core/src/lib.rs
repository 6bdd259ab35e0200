pub mod scalars;
pub mod words;
pub mod matrix;
pub mod characters;
pub mod geometry;
pub mod classifier;
pub mod fixtures;
pub mod oracle;
pub mod lab;
