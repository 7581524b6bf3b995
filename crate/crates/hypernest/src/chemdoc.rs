//! Chemical-system documents (`.chem`, TOML).
//!
//! ```toml
//! [[molecules]]
//! name = "hydrogen"
//! atoms = ["H", "H"]                 # or { element = "H", features = [1.0] }
//! bonds = [{ atoms = [0, 1], type = "sigma" }]
//!
//! [[reactions]]
//! id = "r1"
//! reactants = [{ molecule = "hydrogen", multiplicity = 2 }]
//! products = [{ molecule = "water", multiplicity = 2 }]
//! ```
//!
//! `multiplicity` defaults to 1.

use hypernest_core::chem::{Atom, Bond, ChemicalSystemSpec, MoleculeSpec, ReactionSpec};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
#[error("malformed chemical system document: {0}")]
pub struct ChemDocError(#[from] toml::de::Error);

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    #[serde(default)]
    molecules: Vec<MoleculeDoc>,
    #[serde(default)]
    reactions: Vec<ReactionDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MoleculeDoc {
    name: String,
    atoms: Vec<AtomDoc>,
    #[serde(default)]
    bonds: Vec<BondDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum AtomDoc {
    Symbol(String),
    Full {
        element: String,
        #[serde(default)]
        features: Option<Vec<f64>>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BondDoc {
    atoms: Vec<usize>,
    #[serde(rename = "type")]
    kind: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReactionDoc {
    id: String,
    reactants: Vec<ParticipantDoc>,
    products: Vec<ParticipantDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParticipantDoc {
    molecule: String,
    #[serde(default = "one")]
    multiplicity: u32,
}

fn one() -> u32 {
    1
}

/// Parses a document. Semantic checks (atom indices, unknown molecules)
/// happen when the system is built.
pub fn parse_chemical_system(text: &str) -> Result<ChemicalSystemSpec, ChemDocError> {
    let doc: SystemDoc = toml::from_str(text)?;
    let participants = |ps: Vec<ParticipantDoc>| {
        ps.into_iter()
            .map(|p| (p.molecule, p.multiplicity))
            .collect()
    };
    Ok(ChemicalSystemSpec {
        molecules: doc
            .molecules
            .into_iter()
            .map(|m| MoleculeSpec {
                name: m.name,
                atoms: m
                    .atoms
                    .into_iter()
                    .map(|a| match a {
                        AtomDoc::Symbol(element) => Atom::new(element),
                        AtomDoc::Full { element, features } => Atom { element, features },
                    })
                    .collect(),
                bonds: m
                    .bonds
                    .into_iter()
                    .map(|b| Bond::new(b.atoms, b.kind))
                    .collect(),
            })
            .collect(),
        reactions: doc
            .reactions
            .into_iter()
            .map(|r| ReactionSpec {
                id: r.id,
                reactants: participants(r.reactants),
                products: participants(r.products),
            })
            .collect(),
    })
}

/// The hydrogenation system as a document.
pub const HYDROGENATION_DOCUMENT: &str = include_str!("../fixtures/hydrogenation.chem");
