use alloc::vec::Vec;

use super::{parse_code, StabilizerCode};

const FIVE_QUBIT: &str = include_str!("../../data/five_qubit.stab");
const SEVEN_QUBIT: &str = include_str!("../../data/seven_qubit.stab");
const NINE_QUBIT: &str = include_str!("../../data/nine_qubit.stab");

/// Codes shipped with the crate as embedded `.stab` files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BundledCode {
    FiveQubit,
    SevenQubit,
    NineQubit,
}

impl BundledCode {
    pub const ALL: [BundledCode; 3] = [
        BundledCode::FiveQubit,
        BundledCode::SevenQubit,
        BundledCode::NineQubit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BundledCode::FiveQubit => "five_qubit",
            BundledCode::SevenQubit => "seven_qubit",
            BundledCode::NineQubit => "nine_qubit",
        }
    }

    /// The embedded file contents.
    pub fn text(self) -> &'static str {
        match self {
            BundledCode::FiveQubit => FIVE_QUBIT,
            BundledCode::SevenQubit => SEVEN_QUBIT,
            BundledCode::NineQubit => NINE_QUBIT,
        }
    }

    pub fn code(self) -> StabilizerCode {
        parse_code(self.text(), self.name()).expect("bundled code file is valid")
    }

    /// Resolves a name or one of the aliases `perfect5`, `steane7`, `shor9`.
    pub fn from_name(name: &str) -> Option<BundledCode> {
        match name {
            "five_qubit" | "five" | "perfect5" => Some(BundledCode::FiveQubit),
            "seven_qubit" | "seven" | "steane7" | "steane" => Some(BundledCode::SevenQubit),
            "nine_qubit" | "nine" | "shor9" | "shor" => Some(BundledCode::NineQubit),
            _ => None,
        }
    }
}

pub fn bundled(name: &str) -> Option<StabilizerCode> {
    BundledCode::from_name(name).map(BundledCode::code)
}

pub fn bundled_names() -> Vec<&'static str> {
    BundledCode::ALL.iter().map(|c| c.name()).collect()
}
