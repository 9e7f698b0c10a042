pub mod builders;
pub mod classify;
pub mod complex;
pub mod disk;
pub mod layout;

pub use classify::{classify_dissection, Classification, DissectionClass};
pub use complex::{Corner, CornerId, CornerKind, OrbifoldKind, OrbifoldPoint, Polygon, PolygonComplex, Side, TopologyReport};
pub use disk::{disk_sequences, DiskKind, DiskSequence, MergedPolygon};
pub use layout::{CornerKey, DiskLayout, LaidOut};
