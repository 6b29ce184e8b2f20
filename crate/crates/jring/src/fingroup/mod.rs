//! Finite groups, their actions, characters and 2-cocycles.

mod action;
mod character;
mod cocycle;
mod group;

pub use action::{format_decomposition, GAction};
pub use character::{
    characters_by_dixon, irreducible_characters, irreducible_characters_bounded, Character,
    CharacterTable, DEFAULT_ORDER_BOUND,
};
pub use cocycle::Cocycle2;
pub use group::FinGroup;
