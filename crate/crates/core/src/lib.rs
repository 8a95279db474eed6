pub mod exactpoly;
pub mod grammar;
pub mod identities;
pub mod numcheck;
pub mod permstats;
pub mod report;
pub mod series;
pub mod triangles;
