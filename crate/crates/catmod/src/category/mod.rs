pub mod cache;
pub mod enumerate;
pub mod frame;
pub mod id;
pub mod morphism;

pub use enumerate::{count_hom, enumerate_hom, enumerate_hom_set, for_each_hom, HomSet, DEFAULT_HOM_BUDGET};
pub use frame::{orbit_normal_form, orbit_representatives};
pub use id::{parse_units, CategoryId, Flavor};
pub use morphism::{
    compose, corner_inclusion, embed_bottom_right, identity, make_morphism, standard_inclusion, symplectic_complement,
    CatMorphism, MorphismKey, RawMorphism, SiMorphism, VicMorphism,
};
