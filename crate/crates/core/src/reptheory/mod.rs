//! Representations of acyclic quivers, Hom and Ext dimensions, quiver
//! Grassmannians and the Caldero-Chapoton map.

mod cc;
mod grassmannian;
mod homological;
pub mod linalg;
mod representation;

pub use cc::{
    cc_module, cc_value, cc_value_of_sum, type_a_objects, verify_cc_bijection, verify_gen_exchange_instance,
    CcReport,
};
pub use grassmannian::{count_subreps, grassmannian_euler_char};
pub use homological::{euler_form, ext1_cluster_dim, ext1_module_dim, hom_dim, is_cluster_tilting, is_rigid};
pub use representation::{path_order, CcObject, Matrix, Representation, RepresentationJson};
