//! Schema types for the distkit CLI: the pair input format and the report
//! format, shared with the integration tests.

pub mod format;
