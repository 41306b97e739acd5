pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod group;
pub mod hypotheses;
pub mod ideal;
pub mod input;
pub mod linalg;
pub mod lmfdb;
pub mod oracle;
pub mod poly;
pub mod rank_data;
pub mod report;
pub mod selmer;
pub mod structure;
pub mod verify;
