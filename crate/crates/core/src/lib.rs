pub mod chern;
pub mod degeneration;
pub mod exact;
pub mod partitions;
pub mod plane_config;
pub mod toric;
