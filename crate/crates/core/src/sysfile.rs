//! The sectioned text format for augmented systems and representations.
//!
//! ```text
//! [group]
//! generators: x, y
//! relator: x y x = y x y
//! relator: x y^-1 x y x^-1 y^-1
//! distinguished: x
//!
//! [epsilon]
//! d: 1
//! x: 1
//! y: 1
//!
//! [ring]
//! domain: cyclotomic 3
//! parameters: alpha
//!
//! [rep gamma]
//! dimension: 2
//! x: [0, alpha; alpha, 0]
//! y: [0, alpha*w; alpha*w^2, 0]
//! ```
//!
//! `#` starts a comment. `distinguished` defaults to the first generator,
//! `[ring]` to integers without parameters. A rep block may override the
//! domain (`domain: zmod 5`), which is how search hits are written back.

use std::fmt;

use crate::coeff::{CoeffDomain, CoeffError, Cyclotomic, Integers, ModularField, Rationals};
use crate::expr::{Expr, ROOT_OF_UNITY};
use crate::laurent::{LaurentRing, VariableSet};
use crate::matrices::LambdaMatrix;
use crate::presentation::{AugmentedSystem, EpsilonMap, Presentation, PresentationError};
use crate::rep::Representation;
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl fmt::Display) -> Self {
        ParseError {
            line: Some(line),
            message: message.to_string(),
        }
    }

    fn file(message: impl fmt::Display) -> Self {
        ParseError {
            line: None,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    Rationals,
    Cyclotomic(u32),
    Zmod(u64),
}

/// Receives a concrete coefficient domain chosen at run time.
pub trait DomainVisitor {
    type Output;
    fn visit<R: CoeffDomain>(self, domain: R) -> Self::Output;
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let words: Vec<&str> = text.split_whitespace().collect();
        let arg = |w: &[&str]| -> Result<u64, String> {
            match w {
                [_, k] => k.parse().map_err(|_| format!("bad argument `{k}`")),
                _ => Err(format!("`{}` takes one integer argument", w[0])),
            }
        };
        let spec = match words.first().copied() {
            Some("integers") if words.len() == 1 => RingSpec::Integers,
            Some("rationals") if words.len() == 1 => RingSpec::Rationals,
            Some("cyclotomic") => {
                let m = u32::try_from(arg(&words)?).map_err(|_| "cyclotomic order too large".to_string())?;
                RingSpec::Cyclotomic(m)
            }
            Some("zmod") => RingSpec::Zmod(arg(&words)?),
            _ => return Err(format!("unknown domain `{text}`")),
        };
        spec.dispatch(Check).map_err(|e| e.to_string())?;
        Ok(spec)
    }

    pub fn dispatch<V: DomainVisitor>(&self, visitor: V) -> Result<V::Output, CoeffError> {
        Ok(match *self {
            RingSpec::Integers => visitor.visit(Integers),
            RingSpec::Rationals => visitor.visit(Rationals),
            RingSpec::Cyclotomic(m) => visitor.visit(Cyclotomic::new(m)?),
            RingSpec::Zmod(p) => visitor.visit(ModularField::new(p)?),
        })
    }
}

struct Check;

impl DomainVisitor for Check {
    type Output = ();
    fn visit<R: CoeffDomain>(self, _domain: R) {}
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "integers"),
            RingSpec::Rationals => write!(f, "rationals"),
            RingSpec::Cyclotomic(m) => write!(f, "cyclotomic {m}"),
            RingSpec::Zmod(p) => write!(f, "zmod {p}"),
        }
    }
}

/// A `[rep NAME]` block with unevaluated entries.
#[derive(Debug, Clone)]
pub struct RepBlock {
    pub name: String,
    pub dimension: usize,
    pub domain: Option<RingSpec>,
    /// Per generator in alphabet order, rows of entries.
    pub images: Vec<Vec<Vec<Expr>>>,
    pub line: usize,
    pub image_lines: Vec<usize>,
}

impl PartialEq for RepBlock {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.dimension == other.dimension
            && self.domain == other.domain
            && self.images == other.images
    }
}

impl RepBlock {
    /// Block with integer entries, given row-major per generator.
    pub fn from_row_major(name: &str, domain: Option<RingSpec>, dimension: usize, matrices: &[Vec<i64>]) -> Self {
        let images = matrices
            .iter()
            .map(|m| m.chunks(dimension).map(|row| row.iter().map(|&e| Expr::int(e)).collect()).collect())
            .collect();
        RepBlock {
            name: name.to_string(),
            dimension,
            domain,
            images,
            line: 0,
            image_lines: vec![0; matrices.len()],
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("[rep {}]\ndimension: {}\n", self.name, self.dimension);
        if let Some(d) = self.domain {
            out += &format!("domain: {d}\n");
        }
        for (g, rows) in self.images.iter().enumerate() {
            let body: Vec<String> = rows
                .iter()
                .map(|r| r.iter().map(Expr::to_string).collect::<Vec<_>>().join(", "))
                .collect();
            out += &format!("{}: [{}]\n", alphabet.get(g), body.join("; "));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemFile {
    pub system: AugmentedSystem,
    pub ring: RingSpec,
    pub parameters: Vec<String>,
    pub reps: Vec<RepBlock>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SectionKind {
    Group,
    Epsilon,
    Ring,
    Rep,
}

struct Section {
    kind: SectionKind,
    name: String,
    line: usize,
    entries: Vec<(usize, String, String)>,
}

impl Section {
    fn single(&self, key: &str) -> Result<Option<(usize, &str)>, ParseError> {
        let mut found = None;
        for (line, k, v) in &self.entries {
            if k == key {
                if found.is_some() {
                    return Err(ParseError::at(*line, format!("duplicate `{key}`")));
                }
                found = Some((*line, v.as_str()));
            }
        }
        Ok(found)
    }

    fn require(&self, key: &str) -> Result<(usize, &str), ParseError> {
        self.single(key)?
            .ok_or_else(|| ParseError::at(self.line, format!("missing `{key}`")))
    }
}

fn split_list(text: &str) -> Vec<&str> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect()
}

fn read_sections(text: &str) -> Result<Vec<Section>, ParseError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(header) = content.strip_prefix('[') {
            let header = header
                .strip_suffix(']')
                .ok_or_else(|| ParseError::at(line, "unterminated section header"))?
                .trim();
            let (kind, name) = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["group"] => (SectionKind::Group, String::new()),
                ["epsilon"] => (SectionKind::Epsilon, String::new()),
                ["ring"] => (SectionKind::Ring, String::new()),
                ["rep", name] => (SectionKind::Rep, name.to_string()),
                _ => return Err(ParseError::at(line, format!("unknown section `[{header}]`"))),
            };
            if sections.iter().any(|s| s.kind == kind && s.name == name) {
                return Err(ParseError::at(line, format!("duplicate section `[{header}]`")));
            }
            sections.push(Section {
                kind,
                name,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let section = sections
            .last_mut()
            .ok_or_else(|| ParseError::at(line, "content before the first section"))?;
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| ParseError::at(line, "expected `key: value`"))?;
        section
            .entries
            .push((line, key.trim().to_string(), value.trim().to_string()));
    }
    Ok(sections)
}

fn check_keys(section: &Section, allowed: &[&str]) -> Result<(), ParseError> {
    for (line, k, _) in &section.entries {
        if !allowed.contains(&k.as_str()) {
            return Err(ParseError::at(*line, format!("unknown key `{k}`")));
        }
    }
    Ok(())
}

fn parse_relator(alphabet: &Alphabet, line: usize, text: &str) -> Result<Word, ParseError> {
    let word = |s: &str| alphabet.parse_word(s).map_err(|e| ParseError::at(line, e));
    match text.split_once('=') {
        Some((u, v)) => Ok(word(u)?.multiply(&word(v)?.invert())),
        None => word(text),
    }
}

fn parse_matrix(line: usize, text: &str, dim: usize) -> Result<Vec<Vec<Expr>>, ParseError> {
    let body = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ParseError::at(line, "matrix must be written as [a, b; c, d]"))?;
    let rows: Vec<Vec<Expr>> = body
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| Expr::parse(e).map_err(|err| ParseError::at(line, format!("entry `{}`: {err}", e.trim()))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(ParseError::at(line, format!("matrix is not {dim}×{dim}")));
    }
    Ok(rows)
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let sections = read_sections(text)?;
        let find = |kind| sections.iter().find(|s| s.kind == kind);

        let group = find(SectionKind::Group).ok_or_else(|| ParseError::file("missing [group] section"))?;
        check_keys(group, &["generators", "relator", "distinguished"])?;
        let (gline, gens) = group.require("generators")?;
        let alphabet = Alphabet::from_names(&split_list(gens)).map_err(|e| ParseError::at(gline, e))?;
        if alphabet.is_empty() {
            return Err(ParseError::at(gline, "no generators"));
        }
        let relators = group
            .entries
            .iter()
            .filter(|(_, k, _)| k == "relator")
            .map(|(line, _, v)| parse_relator(&alphabet, *line, v))
            .collect::<Result<Vec<_>, _>>()?;
        let distinguished = match group.single("distinguished")? {
            Some((line, name)) => alphabet
                .index_of(name)
                .ok_or_else(|| ParseError::at(line, format!("distinguished generator `{name}` is not declared")))?,
            None => 0,
        };
        let presentation = Presentation::new(alphabet.clone(), relators).map_err(|e| ParseError::at(group.line, e))?;

        let eps = find(SectionKind::Epsilon).ok_or_else(|| ParseError::file("missing [epsilon] section"))?;
        let d = match eps.single("d")? {
            Some((line, v)) => v
                .parse::<usize>()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| ParseError::at(line, format!("bad rank `{v}`")))?,
            None => 1,
        };
        let mut images = vec![None; alphabet.len()];
        for (line, k, v) in &eps.entries {
            if k == "d" {
                continue;
            }
            let g = alphabet
                .index_of(k)
                .ok_or_else(|| ParseError::at(*line, format!("ε given on undeclared generator `{k}`")))?;
            if images[g].is_some() {
                return Err(ParseError::at(*line, format!("duplicate ε({k})")));
            }
            let vec = split_list(v)
                .iter()
                .map(|s| s.parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| ParseError::at(*line, format!("bad ε vector `{v}`")))?;
            if vec.len() != d {
                return Err(ParseError::at(*line, format!("ε({k}) has length {}, expected {d}", vec.len())));
            }
            images[g] = Some(vec);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(g, im)| im.ok_or_else(|| ParseError::at(eps.line, format!("ε undefined on `{}`", alphabet.get(g)))))
            .collect::<Result<Vec<_>, _>>()?;
        let epsilon = EpsilonMap::new(d, images).map_err(|e| ParseError::at(eps.line, e))?;
        let system = AugmentedSystem::new(presentation.clone(), epsilon, distinguished).map_err(|e| match e {
            PresentationError::NotHomomorphism { index, image } => ParseError::at(
                eps.line,
                format!(
                    "ε does not vanish on relator {} ({}): image {image:?}",
                    index + 1,
                    alphabet.render_word(&presentation.relators()[index])
                ),
            ),
            e => ParseError::at(eps.line, e),
        })?;
        system.check_deficiency().map_err(|e| ParseError::at(group.line, e))?;

        let (ring, parameters) = match find(SectionKind::Ring) {
            Some(s) => {
                check_keys(s, &["domain", "parameters"])?;
                let ring = match s.single("domain")? {
                    Some((line, v)) => RingSpec::parse(v).map_err(|e| ParseError::at(line, e))?,
                    None => RingSpec::Integers,
                };
                let params: Vec<String> = match s.single("parameters")? {
                    Some((line, v)) => {
                        let ps: Vec<String> = split_list(v).into_iter().map(String::from).collect();
                        VariableSet::standard(d, &ps).map_err(|e| ParseError::at(line, e))?;
                        if matches!(ring, RingSpec::Cyclotomic(_)) && ps.iter().any(|p| p == ROOT_OF_UNITY) {
                            return Err(ParseError::at(line, "`w` is reserved for the root of unity"));
                        }
                        ps
                    }
                    None => Vec::new(),
                };
                (ring, params)
            }
            None => (RingSpec::Integers, Vec::new()),
        };

        let mut reps = Vec::new();
        for s in sections.iter().filter(|s| s.kind == SectionKind::Rep) {
            let (dline, dim) = s.require("dimension")?;
            let dimension = dim
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| ParseError::at(dline, format!("bad dimension `{dim}`")))?;
            let domain = s
                .single("domain")?
                .map(|(line, v)| RingSpec::parse(v).map_err(|e| ParseError::at(line, e)))
                .transpose()?;
            let mut mats = vec![None; alphabet.len()];
            let mut image_lines = vec![s.line; alphabet.len()];
            for (line, k, v) in &s.entries {
                if k == "dimension" || k == "domain" {
                    continue;
                }
                let g = alphabet
                    .index_of(k)
                    .ok_or_else(|| ParseError::at(*line, format!("image given for undeclared generator `{k}`")))?;
                if mats[g].is_some() {
                    return Err(ParseError::at(*line, format!("duplicate image of `{k}`")));
                }
                mats[g] = Some(parse_matrix(*line, v, dimension)?);
                image_lines[g] = *line;
            }
            let images = mats
                .into_iter()
                .enumerate()
                .map(|(g, m)| {
                    m.ok_or_else(|| ParseError::at(s.line, format!("rep {}: no image for `{}`", s.name, alphabet.get(g))))
                })
                .collect::<Result<Vec<_>, _>>()?;
            reps.push(RepBlock {
                name: s.name.clone(),
                dimension,
                domain,
                images,
                line: s.line,
                image_lines,
            });
        }

        Ok(SystemFile {
            system,
            ring,
            parameters,
            reps,
        })
    }

    pub fn to_text(&self) -> String {
        let sys = &self.system;
        let alphabet = sys.alphabet();
        let names: Vec<&str> = alphabet.generators().iter().map(|g| g.name()).collect();
        let mut out = format!("[group]\ngenerators: {}\n", names.join(", "));
        for r in sys.presentation().relators() {
            out += &format!("relator: {}\n", alphabet.render_word(r));
        }
        out += &format!("distinguished: {}\n\n[epsilon]\nd: {}\n", sys.distinguished_generator(), sys.d());
        for (g, name) in names.iter().enumerate() {
            let v: Vec<String> = sys.epsilon().image(g).iter().map(i64::to_string).collect();
            out += &format!("{name}: {}\n", v.join(" "));
        }
        out += &format!("\n[ring]\ndomain: {}\n", self.ring);
        if !self.parameters.is_empty() {
            out += &format!("parameters: {}\n", self.parameters.join(", "));
        }
        for rep in &self.reps {
            out += "\n";
            out += &rep.render(alphabet);
        }
        out
    }

    pub fn rep(&self, name: &str) -> Option<&RepBlock> {
        self.reps.iter().find(|r| r.name == name)
    }

    /// Coefficient domain of `rep`, its own override or the file's.
    pub fn domain_of(&self, rep: &RepBlock) -> RingSpec {
        rep.domain.unwrap_or(self.ring)
    }

    /// `t` (or `t1..td`) followed by the declared parameters.
    pub fn variables(&self) -> VariableSet {
        VariableSet::standard(self.system.d(), &self.parameters).expect("checked while parsing")
    }

    /// Evaluates `rep`'s entries over `domain`. Invertibility and the
    /// relators are not checked here.
    pub fn build_representation<R: CoeffDomain>(
        &self,
        rep: &RepBlock,
        domain: R,
    ) -> Result<Representation<R>, ParseError> {
        let ring = LaurentRing::new(domain, self.variables());
        let graded: Vec<usize> = (0..self.system.d()).collect();
        let mut mats = Vec::new();
        for (g, rows) in rep.images.iter().enumerate() {
            let line = rep.image_lines[g];
            let entries = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| e.eval(&ring, &graded).map_err(|err| ParseError::at(line, format!("entry `{e}`: {err}"))))
                        .collect()
                })
                .collect::<Result<Vec<Vec<_>>, _>>()?;
            mats.push(LambdaMatrix::from_rows(&ring, entries).map_err(|e| ParseError::at(line, e))?);
        }
        Representation::new(&ring, rep.dimension, mats).map_err(|e| ParseError::at(rep.line, e))
    }
}
