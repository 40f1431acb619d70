use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelError {
    EmptyId,
    EmptyPidValue,
    EmptyRelationName,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::EmptyId => f.write_str("entity id is empty"),
            ModelError::EmptyPidValue => f.write_str("pid value is empty"),
            ModelError::EmptyRelationName => f.write_str("relation type name is empty"),
        }
    }
}

/// Errors raised by the query and export layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `from` is after `to`.
    InvertedWindow,
    /// Normalization needs at least one edge to take a maximum over.
    EmptyEdges,
    UnknownMode(alloc::string::String),
    /// A table row does not have one cell per column.
    RowWidth { row: usize, expected: usize, found: usize },
    /// The output sink refused a write.
    Sink,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvertedWindow => f.write_str("date window start is after its end"),
            Error::EmptyEdges => f.write_str("cannot normalize an empty edge list"),
            Error::UnknownMode(m) => write!(f, "unknown co-participation mode `{m}` (expected `distinct` or `paper-compat`)"),
            Error::RowWidth { row, expected, found } => {
                write!(f, "row {row} has {found} cells, expected {expected}")
            }
            Error::Sink => f.write_str("failed to write to output"),
        }
    }
}

impl From<fmt::Error> for Error {
    fn from(_: fmt::Error) -> Self {
        Error::Sink
    }
}

impl core::error::Error for ModelError {}
impl core::error::Error for Error {}
