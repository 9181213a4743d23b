//! Exact arithmetic in the formal variable q: integer polynomials, reduced
//! rational functions, and the q-combinatorics built on them.

mod poly;
mod qfun;
mod rational;

pub use poly::PolyQ;
pub use qfun::{
    exact_divide, expand_in_inverse_q, gauge_ratio, gl_order, partition_series, q_binomial,
    r_points, PartitionIterator,
};
pub use rational::RationalFunctionQ;
