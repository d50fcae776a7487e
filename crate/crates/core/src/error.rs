use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inadmissible Cartan type {0}")]
    InadmissibleType(String),

    #[error("rank {0} exceeds the supported maximum of {max}", max = crate::rootsys::MAX_RANK)]
    RankTooLarge(usize),

    #[error("simple index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight has {got} coordinates, expected {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("word ({word}) is not reduced: its product has length {length}")]
    NotReduced { word: String, length: usize },

    #[error("|W_J| = {bound} exceeds the enumeration guard of {guard}")]
    GuardExceeded { bound: u128, guard: u128 },

    #[error("length {length} exceeds the reduced-word cap of {cap}")]
    WordCapExceeded { length: usize, cap: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("negative multiplicity {mult} at weight {weight}")]
    NegativeMultiplicity { weight: String, mult: i64 },

    #[error("type {0} is not simply laced")]
    NotSimplyLaced(String),

    #[error("weight {0} is not in the root lattice")]
    NotInRootLattice(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}
