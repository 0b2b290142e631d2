pub mod ff;
pub mod poly;
pub mod polymat;
pub mod grs;
pub mod decode_gao;
pub mod decode_syn;
pub mod bounds;
pub mod oracle;
pub mod config;
pub mod sim;
pub mod selftest;
pub mod cli;
