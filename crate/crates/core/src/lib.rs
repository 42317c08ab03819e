pub mod decompose;
pub mod elliptic;
pub mod forms;
pub mod lattice;
pub mod mordell;
pub mod cli;
