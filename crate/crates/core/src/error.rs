use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("incompatible group specs {left:?} and {right:?}")]
    IncompatibleSpecs { left: Vec<u64>, right: Vec<u64> },
    #[error("element has {got} coordinates but the group has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("empty set where a nonempty one is required: {0}")]
    EmptySet(&'static str),
    #[error("index {index} outside 1..={h}")]
    IndexOutOfRange { index: usize, h: usize },
    #[error("invalid index chain: {0}")]
    InvalidChain(String),
    #[error("vertex {vertex} does not belong to the required class or layer")]
    VertexOutsideClass { vertex: usize },
    #[error("layer {layer} does not exist (graph has {layers} layers)")]
    NoSuchLayer { layer: usize, layers: usize },
    #[error("subset enumeration over {size} sources exceeds the cap of {cap}; raise the cap or use the matching method")]
    CapExceeded { size: usize, cap: usize },
    #[error("hypercube dimensions differ: {0} vs {1}")]
    MismatchedDimension(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("predicted size {predicted} exceeds the budget of {budget} elements")]
    BudgetExceeded { predicted: u128, budget: u128 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer overflow in group arithmetic")]
    Overflow,
}
