//! Circuit generators for arithmetic and symmetric function families.
//!
//! Every generator validates its width and returns a circuit whose gates lie
//! in the requested basis. Adders and tails are recorded as blocks.

mod arith;
mod blocks;
mod symmetric;

pub use arith::{compress_weighted, decode_factors, gen_div, gen_mult, gen_square, gen_sum, reduce_factoring};
pub use blocks::{gen_equal, gen_full_adder, gen_half_adder, gen_ite};
pub use symmetric::{
    gen_maj, gen_maj_hybrid, gen_sort, gen_sort_hybrid, threshold_tail, HybridOptions, HYBRID_MAX_INPUTS,
};
