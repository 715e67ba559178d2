pub mod factor;
pub mod hensel;
pub mod polygon;
