//! Chemical reaction networks: species, complexes and reactions.
//!
//! A [`Crn`] is three ordered sets. Species and complexes are kept in
//! first-appearance order so that matrices built from a parsed network have
//! a deterministic layout. Complexes are deduplicated by their coefficient
//! map, so `B + A` and `A + B` are the same complex.
//!
//! The text format is one reaction per line:
//!
//! ```text
//! # comment
//! r1: A <-> 2B
//! r2: A + C -> D
//! ```
//!
//! A reversible line `r1: y <-> y'` produces two reactions, `r1+` (`y -> y'`)
//! and `r1-` (`y' -> y`). The arrows `→`, `⇌` and `↔` are accepted as well.
//! Lines without an id get `r<k>`, where `k` is the 1-based index of the
//! reaction line.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::hypercore::{Hypergraph, HypergraphError, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpeciesId(usize);

impl SpeciesId {
    pub const fn new(index: usize) -> Self {
        SpeciesId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexId(usize);

impl ComplexId {
    pub const fn new(index: usize) -> Self {
        ComplexId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrnError {
    #[error("invalid species name {0:?}")]
    InvalidName(String),
    #[error("complex has no species")]
    EmptyComplex,
    #[error("stoichiometric coefficient must be at least 1")]
    ZeroCoefficient,
    #[error("species listed twice in one complex")]
    RepeatedSpecies(SpeciesId),
    #[error("unknown species index {}", .0.index())]
    UnknownSpecies(SpeciesId),
    #[error("unknown complex index {}", .0.index())]
    UnknownComplex(ComplexId),
    #[error("duplicate reaction id {0:?}")]
    DuplicateReactionId(String),
    #[error("network violates {} axiom(s)", .0.len())]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// A nonnegative-integer combination of species, stored sparsely with every
/// coefficient at least 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Complex {
    terms: BTreeMap<SpeciesId, u32>,
}

impl Complex {
    pub fn new(terms: impl IntoIterator<Item = (SpeciesId, u32)>) -> Result<Self, CrnError> {
        let mut map = BTreeMap::new();
        for (s, c) in terms {
            if c == 0 {
                return Err(CrnError::ZeroCoefficient);
            }
            if map.insert(s, c).is_some() {
                return Err(CrnError::RepeatedSpecies(s));
            }
        }
        if map.is_empty() {
            return Err(CrnError::EmptyComplex);
        }
        Ok(Complex { terms: map })
    }

    /// The stoichiometric coefficient `y_s`, zero when `s` is absent.
    pub fn coefficient(&self, species: SpeciesId) -> u32 {
        self.terms.get(&species).copied().unwrap_or(0)
    }

    /// Terms in species order.
    pub fn terms(&self) -> impl Iterator<Item = (SpeciesId, u32)> + '_ {
        self.terms.iter().map(|(s, c)| (*s, *c))
    }

    pub fn species(&self) -> impl Iterator<Item = SpeciesId> + '_ {
        self.terms.keys().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reaction {
    pub id: String,
    pub reactant: ComplexId,
    pub product: ComplexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Crn {
    species: Vec<String>,
    complexes: Vec<Complex>,
    reactions: Vec<Reaction>,
}

impl Crn {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns a species name, returning the existing id if already present.
    pub fn add_species(&mut self, name: &str) -> Result<SpeciesId, CrnError> {
        if let Some(id) = self.species_id(name) {
            return Ok(id);
        }
        if !is_identifier(name) {
            return Err(CrnError::InvalidName(name.to_string()));
        }
        self.species.push(name.to_string());
        Ok(SpeciesId(self.species.len() - 1))
    }

    /// Interns a complex, returning the existing id for an equal coefficient
    /// map.
    pub fn add_complex(&mut self, complex: Complex) -> Result<ComplexId, CrnError> {
        if let Some(s) = complex.species().find(|s| s.0 >= self.species.len()) {
            return Err(CrnError::UnknownSpecies(s));
        }
        if let Some(i) = self.complexes.iter().position(|c| *c == complex) {
            return Ok(ComplexId(i));
        }
        self.complexes.push(complex);
        Ok(ComplexId(self.complexes.len() - 1))
    }

    /// Adds `reactant -> product`. Axioms are not enforced here; see
    /// [`validate`].
    pub fn add_reaction(
        &mut self,
        id: impl Into<String>,
        reactant: ComplexId,
        product: ComplexId,
    ) -> Result<(), CrnError> {
        let id = id.into();
        for c in [reactant, product] {
            if c.0 >= self.complexes.len() {
                return Err(CrnError::UnknownComplex(c));
            }
        }
        if self.reactions.iter().any(|r| r.id == id) {
            return Err(CrnError::DuplicateReactionId(id));
        }
        self.reactions.push(Reaction {
            id,
            reactant,
            product,
        });
        Ok(())
    }

    pub fn species_id(&self, name: &str) -> Option<SpeciesId> {
        self.species.iter().position(|s| s == name).map(SpeciesId)
    }

    pub fn species_name(&self, id: SpeciesId) -> &str {
        &self.species[id.0]
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn complexes(&self) -> &[Complex] {
        &self.complexes
    }

    pub fn complex(&self, id: ComplexId) -> &Complex {
        &self.complexes[id.0]
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn reaction(&self, id: &str) -> Option<&Reaction> {
        self.reactions.iter().find(|r| r.id == id)
    }

    pub fn is_empty(&self) -> bool {
        self.species.is_empty() && self.complexes.is_empty() && self.reactions.is_empty()
    }

    /// `3a + 2b` style text, species in network order.
    pub fn complex_label(&self, id: ComplexId) -> String {
        self.render_complex(&self.complexes[id.0])
    }

    pub fn render_complex(&self, complex: &Complex) -> String {
        let mut out = String::new();
        for (i, (s, c)) in complex.terms().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if c != 1 {
                out.push_str(&c.to_string());
            }
            out.push_str(&self.species[s.0]);
        }
        out
    }

    /// Canonical text: one `id: reactant -> product` line per reaction.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.reactions {
            out.push_str(&format!(
                "{}: {} -> {}\n",
                r.id,
                self.complex_label(r.reactant),
                self.complex_label(r.product)
            ));
        }
        out
    }

    /// Net change `y' - y` per species for a reaction.
    pub fn net_change(&self, reaction: &Reaction) -> Vec<i64> {
        let y = &self.complexes[reaction.reactant.0];
        let y2 = &self.complexes[reaction.product.0];
        (0..self.species.len())
            .map(|s| {
                i64::from(y2.coefficient(SpeciesId(s))) - i64::from(y.coefficient(SpeciesId(s)))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// `(y, y)` in the reaction set.
    SelfReaction {
        reaction: String,
        complex: ComplexId,
    },
    /// A complex that is neither reactant nor product of any reaction.
    IsolatedComplex(ComplexId),
    /// A species that appears in no complex.
    UnusedSpecies(SpeciesId),
    /// The same `(y, y')` pair declared under two ids.
    DuplicateReaction { first: String, second: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    pub fn severity(&self) -> Severity {
        match self.kind {
            ViolationKind::DuplicateReaction { .. } => Severity::Warning,
            _ => Severity::Error,
        }
    }

    pub fn axiom(&self) -> &'static str {
        match self.kind {
            ViolationKind::SelfReaction { .. } => "self-reaction",
            ViolationKind::IsolatedComplex(_) => "isolated-complex",
            ViolationKind::UnusedSpecies(_) => "unused-species",
            ViolationKind::DuplicateReaction { .. } => "duplicate-reaction",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity() {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{sev}: {}: {}", self.axiom(), self.detail)
    }
}

/// Checks the network axioms. An empty list means every axiom holds, which
/// is vacuously the case for an empty network.
pub fn validate(crn: &Crn) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen_pairs: BTreeMap<(ComplexId, ComplexId), &str> = BTreeMap::new();
    for r in &crn.reactions {
        if r.reactant == r.product {
            out.push(Violation {
                kind: ViolationKind::SelfReaction {
                    reaction: r.id.clone(),
                    complex: r.reactant,
                },
                detail: format!(
                    "reaction {} turns {} into itself",
                    r.id,
                    crn.complex_label(r.reactant)
                ),
            });
        }
        match seen_pairs.get(&(r.reactant, r.product)) {
            Some(first) => out.push(Violation {
                kind: ViolationKind::DuplicateReaction {
                    first: (*first).to_string(),
                    second: r.id.clone(),
                },
                detail: format!("reactions {} and {} are the same pair", first, r.id),
            }),
            None => {
                seen_pairs.insert((r.reactant, r.product), &r.id);
            }
        }
    }
    let used: BTreeSet<ComplexId> = crn
        .reactions
        .iter()
        .flat_map(|r| [r.reactant, r.product])
        .collect();
    for i in 0..crn.complexes.len() {
        let c = ComplexId(i);
        if !used.contains(&c) {
            out.push(Violation {
                kind: ViolationKind::IsolatedComplex(c),
                detail: format!("complex {} is in no reaction", crn.complex_label(c)),
            });
        }
    }
    let present: BTreeSet<SpeciesId> = crn.complexes.iter().flat_map(Complex::species).collect();
    for i in 0..crn.species.len() {
        let s = SpeciesId(i);
        if !present.contains(&s) {
            out.push(Violation {
                kind: ViolationKind::UnusedSpecies(s),
                detail: format!("species {} is in no complex", crn.species[i]),
            });
        }
    }
    out
}

/// Species become nodes, complexes simple hyperedges, reactions directed
/// hyperedges from reactant complex to product complex.
///
/// Edge features have one entry per species. A complex edge carries its
/// stoichiometric coefficients; a reaction edge carries the net change
/// `y' - y`. Warning-level violations are tolerated.
pub fn to_reaction_hypergraph(crn: &Crn) -> Result<Hypergraph, CrnError> {
    let violations = validate(crn);
    if violations.iter().any(|v| v.severity() == Severity::Error) {
        return Err(CrnError::Invalid(violations));
    }
    let n = crn.species.len();
    let mut g = Hypergraph::new(0, n);
    for name in &crn.species {
        g.add_node(name.as_str(), Vec::new())?;
    }
    let mut complex_edges = Vec::with_capacity(crn.complexes.len());
    for (i, c) in crn.complexes.iter().enumerate() {
        let features = (0..n)
            .map(|s| f64::from(c.coefficient(SpeciesId(s))))
            .collect();
        let members = c.species().map(|s| NodeId::new(s.0));
        let e = g.add_simple_edge(members, crn.complex_label(ComplexId(i)), features)?;
        complex_edges.push(e);
    }
    for r in &crn.reactions {
        let features = crn.net_change(r).into_iter().map(|x| x as f64).collect();
        g.add_directed_edge(
            complex_edges[r.reactant.0],
            complex_edges[r.product.0],
            r.id.as_str(),
            features,
        )?;
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    ZeroCoefficient,
    RepeatedSpecies(String),
    DuplicateReactionId(String),
    SelfReaction(String),
}

/// Parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {}", describe(.kind))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Syntax(msg) => msg.clone(),
        ParseErrorKind::ZeroCoefficient => "stoichiometric coefficient must be at least 1".into(),
        ParseErrorKind::RepeatedSpecies(s) => {
            format!("species {s} repeated in one complex; write a coefficient instead")
        }
        ParseErrorKind::DuplicateReactionId(id) => format!("duplicate reaction id {id}"),
        ParseErrorKind::SelfReaction(id) => {
            format!("reaction {id} has identical complexes on both sides")
        }
    }
}

/// Parses a reaction list and rejects self-reactions.
pub fn parse_crn(text: &str) -> Result<Crn, ParseError> {
    parse_with(text, true)
}

/// Parses a reaction list without checking the network axioms, so that
/// [`validate`] can report them.
pub fn parse_crn_unchecked(text: &str) -> Result<Crn, ParseError> {
    parse_with(text, false)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Colon,
    Arrow { reversible: bool },
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Letters, digits and underscore, not starting with a digit.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if is_ident_start(c)) && chars.all(is_ident_char)
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let err = |col: usize, msg: String| ParseError {
        line: lineno,
        column: col + 1,
        kind: ParseErrorKind::Syntax(msg),
    };
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
        } else if is_ident_start(c) {
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            // `r1+:` / `r1-:` reaction ids
            if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_whitespace() {
                    j += 1;
                }
                if j < chars.len() && chars[j] == ':' {
                    i += 1;
                }
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits
                .parse::<u64>()
                .map_err(|_| err(start, format!("coefficient {digits} is too large")))?;
            toks.push((Tok::Int(n), start));
        } else if c == '+' {
            toks.push((Tok::Plus, start));
            i += 1;
        } else if c == ':' {
            toks.push((Tok::Colon, start));
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            toks.push((Tok::Arrow { reversible: false }, start));
            i += 2;
        } else if c == '<' && chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
            toks.push((Tok::Arrow { reversible: true }, start));
            i += 3;
        } else if c == '→' {
            toks.push((Tok::Arrow { reversible: false }, start));
            i += 1;
        } else if c == '⇌' || c == '↔' {
            toks.push((Tok::Arrow { reversible: true }, start));
            i += 1;
        } else {
            return Err(err(start, format!("unexpected character {c:?}")));
        }
    }
    Ok(toks)
}

struct LineParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl LineParser<'_> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1) + 1
    }

    fn fail(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.col(),
            kind,
        }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        self.fail(ParseErrorKind::Syntax(msg.into()))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    /// `term ("+" term)*` as (species name, coefficient, column) triples.
    fn complex(&mut self) -> Result<Vec<(String, u32)>, ParseError> {
        let mut terms: Vec<(String, u32)> = Vec::new();
        loop {
            let col = self.col();
            let coef = match self.peek() {
                Some(Tok::Int(n)) => {
                    let n = *n;
                    if n == 0 {
                        return Err(self.fail(ParseErrorKind::ZeroCoefficient));
                    }
                    self.pos += 1;
                    u32::try_from(n).map_err(|_| self.syntax("coefficient is too large"))?
                }
                _ => 1,
            };
            let name = match self.peek() {
                Some(Tok::Ident(name)) if is_identifier(name) => name.clone(),
                _ => return Err(self.syntax("expected species name")),
            };
            if terms.iter().any(|(n, _)| *n == name) {
                return Err(ParseError {
                    line: self.line,
                    column: col,
                    kind: ParseErrorKind::RepeatedSpecies(name),
                });
            }
            self.pos += 1;
            terms.push((name, coef));
            if self.peek() == Some(&Tok::Plus) {
                self.pos += 1;
            } else {
                return Ok(terms);
            }
        }
    }
}

fn parse_with(text: &str, reject_self: bool) -> Result<Crn, ParseError> {
    let mut crn = Crn::new();
    let mut ordinal = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokenize(line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        ordinal += 1;
        let mut p = LineParser {
            toks: &toks,
            pos: 0,
            line: lineno,
            end_col: line.chars().count(),
        };
        let id_col = p.col();
        let id = match (toks.first().map(|t| &t.0), toks.get(1).map(|t| &t.0)) {
            (Some(Tok::Ident(id)), Some(Tok::Colon)) => {
                p.pos = 2;
                id.clone()
            }
            _ => format!("r{ordinal}"),
        };
        let lhs = p.complex()?;
        let reversible = match p.peek() {
            Some(Tok::Arrow { reversible }) => *reversible,
            _ => return Err(p.syntax("expected `->` or `<->`")),
        };
        p.pos += 1;
        let rhs = p.complex()?;
        if p.pos < toks.len() {
            return Err(p.syntax("unexpected trailing input"));
        }

        let mut intern = |terms: Vec<(String, u32)>| -> ComplexId {
            let mut mapped = Vec::with_capacity(terms.len());
            for (name, c) in terms {
                // names were checked by the lexer
                let s = crn.add_species(&name).expect("identifier");
                mapped.push((s, c));
            }
            let complex = Complex::new(mapped).expect("nonempty, positive, distinct");
            crn.add_complex(complex).expect("species exist")
        };
        let y = intern(lhs);
        let y2 = intern(rhs);
        if reject_self && y == y2 {
            return Err(ParseError {
                line: lineno,
                column: id_col,
                kind: ParseErrorKind::SelfReaction(id),
            });
        }
        let pairs = if reversible {
            vec![(format!("{id}+"), y, y2), (format!("{id}-"), y2, y)]
        } else {
            vec![(id, y, y2)]
        };
        for (rid, a, b) in pairs {
            if let Err(CrnError::DuplicateReactionId(rid)) = crn.add_reaction(rid, a, b) {
                return Err(ParseError {
                    line: lineno,
                    column: id_col,
                    kind: ParseErrorKind::DuplicateReactionId(rid),
                });
            }
        }
    }
    Ok(crn)
}
