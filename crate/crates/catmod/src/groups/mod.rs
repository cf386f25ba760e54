pub mod coinvariants;
pub mod cosets;
pub mod generators;
pub mod order;

pub use coinvariants::{coinvariants_of_action, coinvariants_of_space, Coinvariants};
pub use cosets::{coinvariant_transition, double_cosets, double_cosets_with, CoinvariantTransition, DoubleCosetTable};
pub use generators::{closure, enumerate_group, generators, generators_with, GeneratorSet, DEFAULT_GROUP_BUDGET};
pub use order::{group_order, predicted_hom_count};
