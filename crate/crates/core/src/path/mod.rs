//! Partitions, nested partition sequences, sampled regulated paths and jump
//! bookkeeping. Everything else in the crate consumes these types.

mod io;
mod partition;
mod sampled;
mod sequence;

pub use io::{
    parse_path_csv, parse_sequence_json, read_path_csv, write_path_csv, SequenceDescriptor,
};
pub use partition::{trace_partition, Partition};
pub use sampled::{Decoration, JumpEntry, JumpSet, SampledPath, Style};
pub use sequence::{make_dyadic_sequence, PartitionSequence, SequenceKind};
