//! Bridge diagrams built by sweeping the bridge sphere down through a plat.

use crate::arcs::ArcSystem;
use crate::error::{Error, Result};
use crate::plat::{PlatWord, SphereModel};
use crate::twist::apply_generator;

/// Upper arcs after the sweep, over the canonical lower arcs `L_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeDiagram {
    plat: PlatWord,
    level: usize,
    upper: ArcSystem,
}

impl BridgeDiagram {
    /// Wraps an arbitrary upper arc system; the lower arcs are always the
    /// segments `L_1..L_n`.
    pub fn from_upper(upper: ArcSystem) -> Self {
        let plat = PlatWord::new(upper.n(), Vec::new()).expect("n >= 2");
        BridgeDiagram {
            plat,
            level: 0,
            upper,
        }
    }

    pub fn model(&self) -> SphereModel {
        self.upper.model()
    }

    pub fn n(&self) -> usize {
        self.upper.n()
    }

    pub fn upper(&self) -> &ArcSystem {
        &self.upper
    }

    pub fn plat(&self) -> &PlatWord {
        &self.plat
    }

    /// Number of letters swept to reach this diagram.
    pub fn level(&self) -> usize {
        self.level
    }

    /// Endpoints of the lower arc `i`.
    pub fn lower(&self, i: usize) -> (usize, usize) {
        self.model().lower_segment(i)
    }
}

fn check_plat(plat: &PlatWord) -> Result<()> {
    if plat.n() < 2 {
        return Err(Error::TooFewBridges {
            n: plat.n(),
            required: 2,
        });
    }
    Ok(())
}

pub fn build_bridge_diagram(plat: &PlatWord) -> Result<BridgeDiagram> {
    check_plat(plat)?;
    let mut upper = ArcSystem::canonical_top_arcs(plat.n())?;
    for letter in plat.letters() {
        upper = apply_generator(&upper, letter.index, letter.sign)?;
    }
    Ok(BridgeDiagram {
        plat: plat.clone(),
        level: plat.len(),
        upper,
    })
}

/// The upper arcs on every level `S_0..S_k`, where `k` is the word length.
pub fn sweep_snapshots(plat: &PlatWord) -> Result<Vec<ArcSystem>> {
    check_plat(plat)?;
    let mut levels = Vec::with_capacity(plat.len() + 1);
    levels.push(ArcSystem::canonical_top_arcs(plat.n())?);
    for letter in plat.letters() {
        let next = apply_generator(levels.last().unwrap(), letter.index, letter.sign)?;
        levels.push(next);
    }
    Ok(levels)
}
