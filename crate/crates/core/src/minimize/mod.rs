//! Circuit minimization: structural cleanup and SAT-based window resynthesis.

mod cleanup;
mod resynth;
mod window;

pub use cleanup::cleanup;
pub use resynth::{minimize_subcircuits, minimize_subcircuits_with, MinimizeOptions, MinimizeStats};
pub use window::{
    enumerate_windows, window_function, Window, WindowFunction, WindowLimits, CARE_SET_INPUT_CAP,
};
