pub mod cli;
pub mod complexes;
pub mod dubois;
pub mod filtered;
pub mod linalg;
pub mod models;
pub mod report;
pub mod testing;
