pub mod cli;
pub mod input;
pub mod numeric;
pub mod report;
pub mod spectral;
