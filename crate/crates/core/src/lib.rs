//! Bridge diagrams of plats, the well-mixed condition, and certificates
//! that a bridge position has Hempel distance greater than one.

pub mod arcs;
pub mod cert;
pub mod diagram;
pub mod error;
pub mod morse;
pub mod oracle;
pub mod plat;
pub mod reduce;
pub mod render;
pub mod twist;
pub mod wellmixed;

pub use arcs::{Anchor, ArcRecord, ArcSystem, Excursion, Hemisphere, NormalForm};
pub use cert::{certify, find_witness, validate_witness, Certificate, Distance2Witness, Status};
pub use diagram::{build_bridge_diagram, sweep_snapshots, BridgeDiagram};
pub use error::{Error, Result};
pub use morse::{Event, Level, MorseWord};
pub use oracle::oracle_apply;
pub use plat::{Interval, Letter, PlatWord, Sign, SphereModel};
pub use reduce::reduce;
pub use render::{render_svg, RenderOptions};
pub use twist::{apply_generator, apply_word};
pub use wellmixed::{check_all, check_pair, separating_family, SeparatingFamily, WellMixedReport};
