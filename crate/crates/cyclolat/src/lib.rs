pub mod cyclo;
pub mod error;
pub mod hiprec;
pub mod linalg;
pub mod analysis;
pub mod cli;
pub mod numtheory;
pub mod oracle;
pub mod rational;
pub mod roots;
