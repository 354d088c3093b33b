//! Problem instances, their structure encodings and brute-force deciders.

mod graph;
mod qbf;
pub mod sentences;
mod vcsat;

pub use graph::{
    decide_2cc, decide_2cc_n, decide_2cc_n_within, decode_graph, encode_graph, loops_of, maximal_cliques,
    two_cc_witness, Graph,
};
pub use qbf::{
    count_models, decide_qsat2, decide_qunsat2, decide_unique_ext, decode_cnf, decode_dnf, encode_cnf, encode_dnf,
    qsat2_witness, qunsat2_witness, unique_ext_witness, LiteralSet, Qbf2Cnf, Qbf2Dnf,
};
pub use vcsat::{decide_vcsat, decode_vcsat, encode_vcsat, vcsat_witness, VcsatInstance};
