//! Circuit intermediate representation for mixed-dimension qudit registers.

mod circuit;
mod gate;
mod gray;
mod resources;

pub use circuit::{Circuit, Diagnostic, Wire};
pub use gate::{normalize_angle, Gate, GateKind};
pub use gray::{all_words, gray_sequence, index_to_word, word_to_index};
pub use resources::{asap_depth, asap_layers, is_aux_label, resource_report, ResourceReport, SegmentedCircuit};
