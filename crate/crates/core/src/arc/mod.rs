//! Truncated arc bundles of affine varieties.

mod bundle;
mod map;
mod variety;

pub use bundle::{
    apply_to_arc, arc_index, arc_var_names, check_nabla_naturality, fiber_at, nabla, nabla_point,
    product_shuffle, prolong_variety, ArcFiber, ArcPoint, ArcVariety,
};
pub use map::{prolong_morphism, PolyMap, RegularFn};
pub use variety::{product_variety, CoeffField, VarietyPresentation};
