pub mod cartier;
pub mod cli;
pub mod enumerate;
pub mod ffield;
pub mod ideal;
pub mod linalg;
pub mod poly;

#[cfg(test)]
pub(crate) mod testutil;
