pub mod cli;
pub mod complexes;
pub mod groups;
pub mod qsim;
pub mod scalars;
pub mod tensornet;
pub mod tlft2d;
pub mod turaevviro;
