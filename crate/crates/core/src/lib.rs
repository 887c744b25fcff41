//! Noncrossing partitions: the divisibility lattice, perfect shuffles, the
//! composition partial monoid with Kreweras complements, incidence algebras of
//! the associated coalgebras, and truncated simplicial models.

pub mod brute;
pub mod error;
pub mod incidence;
pub mod kreweras;
pub mod lattice;
pub mod literal;
pub mod partition;
pub mod shuffle;
pub mod simplicial;
pub mod verify;

pub use error::{NcpError, Result};
pub use partition::{GroundSubset, NoncrossingPartition, Partition, SubsetPartition};
