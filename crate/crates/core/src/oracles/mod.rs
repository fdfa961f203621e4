//! Q-oracles for specific graph classes.

mod assign;
mod connector;
mod degree;
mod ep;
mod family;
mod menger;
mod outer;

pub use assign::{assign_trick, Assignment};
pub use connector::{connector_oracle, minor_free_oracle, topo_minor_oracle, ConnectorOracle};
pub use degree::{degree_oracle, DegreeOracle};
pub use ep::{
    ep_hitting_set, ep_node_bound, greedy_packing, packing_number, EpMode, EpResult, HittingSet,
    DEFAULT_EP_BUDGET,
};
pub use family::{EdgeSetFamily, FamilyOracle, TerminalFamily};
pub use menger::{k2t_menger_oracle, MengerOracle};
pub use outer::{
    outer_k_planar_oracle, random_weakly_outer_k_planar, CircularDrawing, CrossingStats,
    OuterKPlanarOracle,
};
