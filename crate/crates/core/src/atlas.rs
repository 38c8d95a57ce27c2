//! Fixture tables: Fricke parameterisations, families, graphs, modular polynomials and
//! Bezout witnesses. Embedded copies are the default; a directory can override any file.

use crate::arith::UniPoly;
use crate::error::{Error, Result};
use crate::families::FamilyTables;
use crate::fricke::FrickeParam;
use crate::isogeny::ModularPolynomial;
use crate::semistable::BezoutWitness;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

pub const FIXTURE_ENV: &str = "ATLAS_FIXTURE_DIR";
pub const PHI_ENV: &str = "ATLAS_PHI_DIR";

/// Levels whose modular polynomial ships with the crate.
pub const REQUIRED_PHI: [u32; 5] = [2, 3, 5, 7, 13];
/// Levels looked up only in an external directory.
pub const OPTIONAL_PHI: [u32; 7] = [11, 17, 19, 37, 43, 67, 163];

const FRICKE_JSON: &str = include_str!("../data/fricke_params.json");
const FAMILIES_JSON: &str = include_str!("../data/families.json");
const BEZOUT_JSON: [(u32, &str); 3] = [
    (4, include_str!("../data/bezout_4.json")),
    (6, include_str!("../data/bezout_6.json")),
    (9, include_str!("../data/bezout_9.json")),
];
const PHI_TXT: [(u32, &str); 5] = [
    (2, include_str!("../data/phi/phi_j_2.txt")),
    (3, include_str!("../data/phi/phi_j_3.txt")),
    (5, include_str!("../data/phi/phi_j_5.txt")),
    (7, include_str!("../data/phi/phi_j_7.txt")),
    (13, include_str!("../data/phi/phi_j_13.txt")),
];

#[derive(Clone, Debug)]
pub struct Atlas {
    pub(crate) fricke: BTreeMap<(u32, usize), FrickeParam>,
    pub(crate) families: FamilyTables,
    pub(crate) phi: BTreeMap<u32, ModularPolynomial>,
    pub(crate) bezout: BTreeMap<u32, Vec<BezoutWitness>>,
    /// j(C_{n,i}(t,1)) as (6912 A^3, 4 A^3 + 27 B^2), filled on first use.
    pub(crate) jpolys: OnceLock<BTreeMap<(u32, usize), (UniPoly, UniPoly)>>,
}

fn read_override(dir: Option<&Path>, name: &str) -> Result<Option<String>> {
    let Some(dir) = dir else { return Ok(None) };
    let path = dir.join(name);
    if !path.exists() {
        return Ok(None);
    }
    std::fs::read_to_string(&path)
        .map(Some)
        .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))
}

impl Atlas {
    /// The tables compiled into the crate.
    pub fn embedded() -> &'static Atlas {
        static EMBEDDED: OnceLock<Atlas> = OnceLock::new();
        EMBEDDED.get_or_init(|| Atlas::load(None, None).expect("embedded fixtures are valid"))
    }

    /// Tables with `ATLAS_FIXTURE_DIR` / `ATLAS_PHI_DIR` overrides applied.
    pub fn from_env() -> Result<Atlas> {
        let fx = std::env::var_os(FIXTURE_ENV).map(PathBuf::from);
        let phi = std::env::var_os(PHI_ENV).map(PathBuf::from);
        Atlas::load(fx.as_deref(), phi.as_deref())
    }

    /// Loads fixtures, taking each file from `fixture_dir` when present there.
    /// With `phi_dir` set, modular polynomials come only from that directory.
    pub fn load(fixture_dir: Option<&Path>, phi_dir: Option<&Path>) -> Result<Atlas> {
        let fricke_src = read_override(fixture_dir, "fricke_params.json")?;
        let fricke = crate::fricke::parse_fricke(fricke_src.as_deref().unwrap_or(FRICKE_JSON))?;
        let fam_src = read_override(fixture_dir, "families.json")?;
        let families = FamilyTables::parse(fam_src.as_deref().unwrap_or(FAMILIES_JSON))?;
        let mut bezout = BTreeMap::new();
        for (n, text) in BEZOUT_JSON {
            let src = read_override(fixture_dir, &format!("bezout_{n}.json"))?;
            bezout.insert(n, crate::semistable::parse_bezout(n, src.as_deref().unwrap_or(text))?);
        }
        let mut phi = BTreeMap::new();
        match phi_dir {
            None => {
                for (l, text) in PHI_TXT {
                    phi.insert(l, ModularPolynomial::parse(l, text)?);
                }
            }
            Some(dir) => {
                for l in REQUIRED_PHI.into_iter().chain(OPTIONAL_PHI) {
                    if let Some(text) = read_override(Some(dir), &format!("phi_j_{l}.txt"))? {
                        phi.insert(l, ModularPolynomial::parse(l, &text)?);
                    }
                }
            }
        }
        Ok(Atlas { fricke, families, phi, bezout, jpolys: OnceLock::new() })
    }

    pub fn phi(&self, l: u32) -> Result<&ModularPolynomial> {
        self.phi.get(&l).ok_or(Error::PhiUnavailable(l))
    }

    pub fn phi_levels(&self) -> Vec<u32> {
        self.phi.keys().copied().collect()
    }

    pub fn families(&self) -> &FamilyTables {
        &self.families
    }
}
