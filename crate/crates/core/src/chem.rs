//! Molecular and multilevel chemical hypergraphs.
//!
//! A molecular hypergraph has one node per atom and one simple hyperedge per
//! bond or substructure, so a delocalized bond over six atoms is a single
//! 6-order hyperedge. A chemical hypergraph stacks more levels on top:
//! molecules are nesting hyperedges over their bond edges, the reactant and
//! product sides of a reaction are nesting hyperedges over molecule edges,
//! and the reaction itself is a directed hyperedge between the two sides.
//!
//! Nodes are atom individuals, not element types. A reactant written as
//! `3 H2` is built as three separate hydrogen molecules with their own atoms.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::hypercore::{EdgeId, Hypergraph, HypergraphError, NodeId};

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub element: String,
    pub features: Option<Vec<f64>>,
}

impl Atom {
    pub fn new(element: impl Into<String>) -> Self {
        Atom {
            element: element.into(),
            features: None,
        }
    }
}

/// A bond, or any substructure, over two or more atoms of one molecule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bond {
    pub atoms: Vec<usize>,
    pub kind: String,
}

impl Bond {
    pub fn new(atoms: impl Into<Vec<usize>>, kind: impl Into<String>) -> Self {
        Bond {
            atoms: atoms.into(),
            kind: kind.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeSpec {
    pub name: String,
    pub atoms: Vec<Atom>,
    pub bonds: Vec<Bond>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionSpec {
    pub id: String,
    /// (molecule name, multiplicity)
    pub reactants: Vec<(String, u32)>,
    pub products: Vec<(String, u32)>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChemicalSystemSpec {
    pub molecules: Vec<MoleculeSpec>,
    pub reactions: Vec<ReactionSpec>,
}

impl ChemicalSystemSpec {
    pub fn molecule(&self, name: &str) -> Option<&MoleculeSpec> {
        self.molecules.iter().find(|m| m.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChemError {
    #[error("molecule {molecule}: bond {bond} refers to atom {atom}, but there are {atoms} atoms")]
    InvalidAtomIndex {
        molecule: String,
        bond: usize,
        atom: usize,
        atoms: usize,
    },
    #[error("molecule {molecule}: bond {bond} has no atoms")]
    EmptyBond { molecule: String, bond: usize },
    #[error("molecule {molecule}: bond {bond} lists atom {atom} twice")]
    RepeatedAtom {
        molecule: String,
        bond: usize,
        atom: usize,
    },
    #[error("molecule {molecule}: atom {atom} has {found} features, expected {expected}")]
    FeatureDim {
        molecule: String,
        atom: usize,
        expected: usize,
        found: usize,
    },
    #[error("molecule {0} has no atoms")]
    EmptyMolecule(String),
    #[error("molecule {0} is defined more than once")]
    DuplicateMolecule(String),
    #[error("reaction {reaction} refers to unknown molecule {molecule}")]
    UnknownMolecule { reaction: String, molecule: String },
    #[error("reaction {reaction}: multiplicity of {molecule} must be at least 1")]
    ZeroMultiplicity { reaction: String, molecule: String },
    #[error("reaction {0} has an empty reactant or product side")]
    EmptySide(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

fn check_molecule(spec: &MoleculeSpec) -> Result<(), ChemError> {
    if spec.atoms.is_empty() {
        return Err(ChemError::EmptyMolecule(spec.name.clone()));
    }
    for (b, bond) in spec.bonds.iter().enumerate() {
        if bond.atoms.is_empty() {
            return Err(ChemError::EmptyBond {
                molecule: spec.name.clone(),
                bond: b,
            });
        }
        let mut seen = BTreeSet::new();
        for &a in &bond.atoms {
            if a >= spec.atoms.len() {
                return Err(ChemError::InvalidAtomIndex {
                    molecule: spec.name.clone(),
                    bond: b,
                    atom: a,
                    atoms: spec.atoms.len(),
                });
            }
            if !seen.insert(a) {
                return Err(ChemError::RepeatedAtom {
                    molecule: spec.name.clone(),
                    bond: b,
                    atom: a,
                });
            }
        }
    }
    Ok(())
}

/// Node feature dimension shared by all atoms that carry features.
fn feature_dim<'a>(
    molecules: impl IntoIterator<Item = &'a MoleculeSpec>,
) -> Result<usize, ChemError> {
    let mut dim = None;
    for m in molecules {
        for (i, atom) in m.atoms.iter().enumerate() {
            if let Some(f) = &atom.features {
                match dim {
                    None => dim = Some(f.len()),
                    Some(d) if d != f.len() => {
                        return Err(ChemError::FeatureDim {
                            molecule: m.name.clone(),
                            atom: i,
                            expected: d,
                            found: f.len(),
                        })
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(dim.unwrap_or(0))
}

/// Adds one copy of the molecule's atoms and bond edges. When `cover_atoms`
/// is set, atoms outside every bond get a 1-order "atom" edge so that the
/// returned edges span the whole molecule.
fn instantiate(
    g: &mut Hypergraph,
    spec: &MoleculeSpec,
    cover_atoms: bool,
) -> Result<Vec<EdgeId>, ChemError> {
    let dim = g.node_dim();
    let nodes: Vec<NodeId> = spec
        .atoms
        .iter()
        .map(|a| {
            let features = a.features.clone().unwrap_or_else(|| vec![0.0; dim]);
            g.add_node(a.element.as_str(), features)
        })
        .collect::<Result<_, _>>()?;
    let mut edges = Vec::with_capacity(spec.bonds.len());
    let mut bonded = BTreeSet::new();
    for bond in &spec.bonds {
        bonded.extend(bond.atoms.iter().copied());
        let members = bond.atoms.iter().map(|&i| nodes[i]);
        edges.push(g.add_simple_edge(members, bond.kind.as_str(), Vec::new())?);
    }
    if cover_atoms {
        for (i, v) in nodes.iter().enumerate() {
            if !bonded.contains(&i) {
                edges.push(g.add_simple_edge([*v], "atom", Vec::new())?);
            }
        }
    }
    Ok(edges)
}

/// One node per atom, labelled with its element, and one simple hyperedge
/// per bond, labelled with its kind.
pub fn build_molecular_hypergraph(spec: &MoleculeSpec) -> Result<Hypergraph, ChemError> {
    check_molecule(spec)?;
    let mut g = Hypergraph::new(feature_dim([spec])?, 0);
    instantiate(&mut g, spec, false)?;
    Ok(g)
}

fn add_molecule(g: &mut Hypergraph, spec: &MoleculeSpec) -> Result<EdgeId, ChemError> {
    let bonds = instantiate(g, spec, true)?;
    Ok(g.add_nesting_edge(bonds, spec.name.as_str(), Vec::new())?)
}

/// Builds the multilevel hypergraph of a whole chemical system.
///
/// Molecules that take part in no reaction are built once, in declaration
/// order. Then, for each reaction, every `(molecule, k)` entry is built `k`
/// times; the reactant copies are grouped by a nesting edge labelled
/// `"<id> reactants"`, the product copies by `"<id> products"`, and a
/// directed edge labelled with the reaction id points from the first group
/// to the second.
pub fn build_chemical_hypergraph(spec: &ChemicalSystemSpec) -> Result<Hypergraph, ChemError> {
    let mut names = BTreeSet::new();
    for m in &spec.molecules {
        if !names.insert(m.name.as_str()) {
            return Err(ChemError::DuplicateMolecule(m.name.clone()));
        }
        check_molecule(m)?;
    }
    let mut referenced = BTreeSet::new();
    for r in &spec.reactions {
        if r.reactants.is_empty() || r.products.is_empty() {
            return Err(ChemError::EmptySide(r.id.clone()));
        }
        for (name, k) in r.reactants.iter().chain(&r.products) {
            if !names.contains(name.as_str()) {
                return Err(ChemError::UnknownMolecule {
                    reaction: r.id.clone(),
                    molecule: name.clone(),
                });
            }
            if *k == 0 {
                return Err(ChemError::ZeroMultiplicity {
                    reaction: r.id.clone(),
                    molecule: name.clone(),
                });
            }
            referenced.insert(name.as_str());
        }
    }

    let mut g = Hypergraph::new(feature_dim(&spec.molecules)?, 0);
    for m in &spec.molecules {
        if !referenced.contains(m.name.as_str()) {
            add_molecule(&mut g, m)?;
        }
    }
    for r in &spec.reactions {
        let mut side = |entries: &[(String, u32)]| -> Result<Vec<EdgeId>, ChemError> {
            let mut out = Vec::new();
            for (name, k) in entries {
                let m = spec.molecule(name).expect("checked above");
                for _ in 0..*k {
                    out.push(add_molecule(&mut g, m)?);
                }
            }
            Ok(out)
        };
        let reactants = side(&r.reactants)?;
        let products = side(&r.products)?;
        let source = g.add_nesting_edge(reactants, format!("{} reactants", r.id), Vec::new())?;
        let target = g.add_nesting_edge(products, format!("{} products", r.id), Vec::new())?;
        g.add_directed_edge(source, target, r.id.as_str(), Vec::new())?;
    }
    Ok(g)
}

fn molecule(name: &str, elements: &[&str], bonds: Vec<Bond>) -> MoleculeSpec {
    MoleculeSpec {
        name: name.into(),
        atoms: elements.iter().map(|e| Atom::new(*e)).collect(),
        bonds,
    }
}

/// Benzene with explicit hydrogens: atoms 0..6 are carbons around the ring,
/// atom `6 + i` is the hydrogen on carbon `i`. Six C-H sigma bonds, six C-C
/// sigma bonds and one delocalized pi bond over the six carbons.
pub fn benzene_fixture() -> MoleculeSpec {
    let mut bonds = Vec::new();
    for i in 0..6 {
        bonds.push(Bond::new([i, 6 + i], "sigma"));
    }
    for i in 0..6 {
        bonds.push(Bond::new([i, (i + 1) % 6], "sigma"));
    }
    bonds.push(Bond::new([0, 1, 2, 3, 4, 5], "pi-delocalized"));
    molecule(
        "benzene",
        &["C", "C", "C", "C", "C", "C", "H", "H", "H", "H", "H", "H"],
        bonds,
    )
}

pub fn hydrogen_fixture() -> MoleculeSpec {
    molecule("hydrogen", &["H", "H"], vec![Bond::new([0, 1], "sigma")])
}

/// Cyclohexane: carbons 0..6 in a ring, carbon `i` carries hydrogens
/// `6 + 2i` and `7 + 2i`. Six C-C and twelve C-H sigma bonds.
pub fn cyclohexane_fixture() -> MoleculeSpec {
    let mut elements = vec!["C"; 6];
    elements.extend(["H"; 12]);
    let mut bonds = Vec::new();
    for i in 0..6 {
        bonds.push(Bond::new([i, (i + 1) % 6], "sigma"));
    }
    for i in 0..6 {
        bonds.push(Bond::new([i, 6 + 2 * i], "sigma"));
        bonds.push(Bond::new([i, 7 + 2 * i], "sigma"));
    }
    molecule("cyclohexane", &elements, bonds)
}

/// C6H6 + 3 H2 -> C6H12.
pub fn hydrogenation_fixture() -> ChemicalSystemSpec {
    ChemicalSystemSpec {
        molecules: vec![benzene_fixture(), hydrogen_fixture(), cyclohexane_fixture()],
        reactions: vec![ReactionSpec {
            id: "hydrogenation".into(),
            reactants: vec![("benzene".into(), 1), ("hydrogen".into(), 3)],
            products: vec![("cyclohexane".into(), 1)],
        }],
    }
}

/// Five species, five complexes, six reactions after splitting the two
/// reversible lines.
pub fn feinberg_fixture() -> &'static str {
    "# Example network: 5 species, 5 complexes, 6 reactions\n\
     r1: A <-> 2B\n\
     r2: A + C <-> D\n\
     r3: D -> B + E\n\
     r4: B + E -> A + C\n"
}

/// Small metabolic network; r1 is reversible.
pub fn metabolic_fixture() -> &'static str {
    "# Metabolic network: 5 metabolites, 3 reactions (r1 reversible)\n\
     r1: 3a + 2b <-> c\n\
     r2: c + b -> a + 4d\n\
     r3: d -> 2e\n"
}

/// A two-volume miniature of a novel's structure: characters are nodes,
/// scenes are simple edges, chapters, books and volumes are nesting edges,
/// and directed edges order consecutive siblings at every level.
pub fn lesmis_fixture() -> Hypergraph {
    const CHARACTERS: [&str; 7] = [
        "Myriel",
        "Valjean",
        "Fantine",
        "Thenardier",
        "Javert",
        "Cosette",
        "Marius",
    ];
    // volume -> book -> chapter -> scene -> character indices
    type Chapter = (&'static str, &'static [&'static [usize]]);
    type Book = (&'static str, &'static [Chapter]);
    const VOLUMES: [(&str, &[Book]); 2] = [
        (
            "Fantine",
            &[
                (
                    "A Just Man",
                    &[("1.1.1", &[&[0], &[0, 1]]), ("1.1.2", &[&[1, 0]])],
                ),
                (
                    "The Fall",
                    &[("1.2.1", &[&[2, 3], &[2, 4]]), ("1.2.2", &[&[1, 4, 2]])],
                ),
            ],
        ),
        (
            "Cosette",
            &[(
                "Waterloo",
                &[("2.1.1", &[&[3]]), ("2.1.2", &[&[1, 5], &[3, 5], &[4, 1]])],
            )],
        ),
    ];

    fn chain(g: &mut Hypergraph, parts: &[EdgeId], level: &str) {
        for pair in parts.windows(2) {
            g.add_directed_edge(pair[0], pair[1], format!("next {level}"), Vec::new())
                .expect("siblings exist");
        }
    }

    let mut g = Hypergraph::new(0, 0);
    let people: Vec<NodeId> = CHARACTERS
        .iter()
        .map(|c| g.add_node(*c, Vec::new()).expect("no features"))
        .collect();
    let mut volumes = Vec::new();
    for (vname, books) in VOLUMES {
        let mut book_edges = Vec::new();
        for (bname, chapters) in books {
            let mut chapter_edges = Vec::new();
            for (cname, scenes) in *chapters {
                let mut scene_edges = Vec::new();
                for (s, cast) in scenes.iter().enumerate() {
                    let members = cast.iter().map(|&i| people[i]);
                    let e = g
                        .add_simple_edge(members, format!("scene {cname}.{}", s + 1), Vec::new())
                        .expect("valid cast");
                    scene_edges.push(e);
                }
                chain(&mut g, &scene_edges, "scene");
                let c = g
                    .add_nesting_edge(scene_edges, format!("chapter {cname}"), Vec::new())
                    .expect("scenes exist");
                chapter_edges.push(c);
            }
            chain(&mut g, &chapter_edges, "chapter");
            let b = g
                .add_nesting_edge(chapter_edges, format!("book {bname}"), Vec::new())
                .expect("chapters exist");
            book_edges.push(b);
        }
        chain(&mut g, &book_edges, "book");
        let v = g
            .add_nesting_edge(book_edges, format!("volume {vname}"), Vec::new())
            .expect("books exist");
        volumes.push(v);
    }
    chain(&mut g, &volumes, "volume");
    g
}
