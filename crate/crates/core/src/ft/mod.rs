//! Fault-tolerant gadgets as located circuits, Pauli frame propagation and
//! exhaustive checks of their fault-tolerance contracts.

pub mod check;
pub mod circuit;
pub mod decode;
pub mod execute;
pub mod frame;
pub mod gadgets;
pub mod teleport;

pub use check::{
    check_property, check_property_with, check_support_claim, CheckOptions, Counterexample,
    GadgetCheckReport, Property, SupportClaimReport,
};
pub use circuit::{
    Basis, Circuit, CircuitBuilder, Consensus, Gate1, Gate2, Location, LocationKind, Schedule,
};
pub use decode::{BlockDecoder, ResidualError};
pub use execute::{execute, execute_with, stabilized_by, Draw, Execution};
pub use frame::{propagate, Fault, FaultPattern, Frame, FrameSimulator, Propagation};
pub use gadgets::{
    broken_steane_ec, cat_state_circuit, knill_ec, knill_measure, logical_projection,
    measure_logical, prep_logical, shor_ec, steane_ec, transversal_gate, CodeKit, EcKind, Gadget,
    GadgetRole, LogicalGate, PrepStrategy,
};
pub use teleport::{pi8_teleport_check, TeleportReport};
