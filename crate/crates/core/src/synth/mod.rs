//! SAT-based exact synthesis of small, possibly partial, functions.

mod exact;

pub use exact::{
    synthesize_fixed_size, synthesize_fixed_size_with, synthesize_min, synthesize_min_with,
    SynthesisOptions, SynthesisResult, SynthesisSpec, SynthesisStats, SynthesisStatus,
    MAX_SYNTHESIS_INPUTS,
};
