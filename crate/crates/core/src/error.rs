use thiserror::Error;

use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image {point} appears twice; not a bijection")]
    NotBijective { point: usize },
    #[error("point {point} repeated in cycle notation")]
    RepeatedPoint { point: usize },
    #[error("negative point index at position {pos}")]
    NegativePoint { pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group too large: closure exceeds the element cap of {cap}")]
    TooLarge { cap: usize },
    #[error(
        "lattice too large: group order {order} exceeds the brute-force threshold {threshold}"
    )]
    LatticeTooLarge { order: usize, threshold: usize },
    #[error("carrier of order {order} exceeds the subgroup-enumeration cap {cap}")]
    CarrierTooLarge { order: usize, cap: usize },
    #[error("subgroup is not normal: {h}^{g} is outside it")]
    NotNormal { h: Perm, g: Perm },
    #[error("element {0} is not in the group")]
    NotInGroup(Perm),
    #[error("subgroup does not belong to this group")]
    ForeignSubgroup,
    #[error("element set is not closed under multiplication")]
    NotClosed,
    #[error("not a p-group: order {order}")]
    NotPGroup { order: usize },
    #[error("group is abelian")]
    Abelian,
    #[error("trivial group")]
    TrivialGroup,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid module action: {0}")]
    InvalidAction(String),
    #[error("group is not a member of the class")]
    NotMember,
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
