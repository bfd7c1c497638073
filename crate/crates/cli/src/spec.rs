//! Group specifications: named families, direct products and explicit generators.
//!
//! Grammar (whitespace around tokens is ignored):
//!
//! ```text
//! spec    := factor ('x' factor)*            left-associative direct product
//! factor  := 'C' n | 'D' n | 'S' n | 'A' n | 'Q8' | 'Dic' n
//!          | 'perm(' degree '):' cycles (';' cycles)*
//! ```
//!
//! `D<n>` is the dihedral group of order `2n`; `Dic<n>` the dicyclic group of order `4n`.

use std::fmt;

use amconst_core::perm::{PermError, PermGroup, Permutation};

/// Largest parameter accepted for `C`, `D`.
pub const MAX_CYCLIC_PARAM: usize = 1000;
/// Largest parameter accepted for `Dic` (regular action on `4n` points).
pub const MAX_DICYCLIC_PARAM: usize = 250;
/// Largest parameter accepted for `S`, `A`.
pub const MAX_SYMMETRIC_PARAM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("empty group specification")]
    Empty,
    #[error("unknown group family in {0:?}")]
    UnknownFamily(String),
    #[error("parameter {param} for {family} is outside 1..={max}")]
    ParamOutOfRange {
        family: &'static str,
        param: String,
        max: usize,
    },
    #[error("malformed explicit group {0:?}: expected perm(<degree>): <cycles>; ...")]
    MalformedExplicit(String),
    #[error("generator {generator:?}: {source}")]
    Cycles { generator: String, source: PermError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
    Quaternion,
    Dicyclic,
}

impl Family {
    fn prefix(self) -> &'static str {
        match self {
            Family::Cyclic => "C",
            Family::Dihedral => "D",
            Family::Symmetric => "S",
            Family::Alternating => "A",
            Family::Quaternion => "Q",
            Family::Dicyclic => "Dic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Family { family: Family, param: usize },
    Explicit { degree: usize, generators: Vec<String> },
    Product(Box<GroupSource>, Box<GroupSource>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub label: String,
    pub source: GroupSource,
}

impl fmt::Display for GroupSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSource::Family { family, param } => write!(f, "{}{param}", family.prefix()),
            GroupSource::Explicit { degree, generators } => {
                write!(f, "perm({degree}): {}", generators.join("; "))
            }
            GroupSource::Product(l, r) => write!(f, "{l}x{r}"),
        }
    }
}

fn parse_param(family: Family, digits: &str, max: usize) -> Result<GroupSource, SpecError> {
    let out_of_range = || SpecError::ParamOutOfRange {
        family: family.prefix(),
        param: digits.to_string(),
        max,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SpecError::UnknownFamily(format!("{}{digits}", family.prefix())));
    }
    let param: usize = digits.parse().map_err(|_| out_of_range())?;
    if param == 0 || param > max {
        return Err(out_of_range());
    }
    Ok(GroupSource::Family { family, param })
}

fn parse_explicit(text: &str) -> Result<GroupSource, SpecError> {
    let malformed = || SpecError::MalformedExplicit(text.to_string());
    let rest = text.strip_prefix("perm(").ok_or_else(malformed)?;
    let (degree, rest) = rest.split_once(')').ok_or_else(malformed)?;
    let degree: usize = degree.trim().parse().map_err(|_| malformed())?;
    if degree == 0 {
        return Err(malformed());
    }
    let body = rest.trim_start().strip_prefix(':').ok_or_else(malformed)?;
    let generators: Vec<String> = body
        .split(';')
        .map(|g| g.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect();
    for g in &generators {
        Permutation::parse(g, degree).map_err(|source| SpecError::Cycles {
            generator: g.clone(),
            source,
        })?;
    }
    Ok(GroupSource::Explicit { degree, generators })
}

fn parse_factor(text: &str) -> Result<GroupSource, SpecError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(SpecError::Empty);
    }
    if t.starts_with("perm") {
        return parse_explicit(t);
    }
    if t == "Q8" {
        return Ok(GroupSource::Family {
            family: Family::Quaternion,
            param: 2,
        });
    }
    if let Some(d) = t.strip_prefix("Dic") {
        return parse_param(Family::Dicyclic, d, MAX_DICYCLIC_PARAM);
    }
    let (head, digits) = t.split_at(1);
    match head {
        "C" => parse_param(Family::Cyclic, digits, MAX_CYCLIC_PARAM),
        "D" => parse_param(Family::Dihedral, digits, MAX_CYCLIC_PARAM),
        "S" => parse_param(Family::Symmetric, digits, MAX_SYMMETRIC_PARAM),
        "A" => parse_param(Family::Alternating, digits, MAX_SYMMETRIC_PARAM),
        _ => Err(SpecError::UnknownFamily(t.to_string())),
    }
}

/// Parses a group specification; the label is the input with whitespace
/// around product separators removed.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(SpecError::Empty);
    }
    let mut factors = text.split('x').map(parse_factor);
    let mut source = factors.next().ok_or(SpecError::Empty)??;
    for f in factors {
        source = GroupSource::Product(Box::new(source), Box::new(f?));
    }
    Ok(GroupSpec {
        label: text.split('x').map(str::trim).collect::<Vec<_>>().join("x"),
        source,
    })
}

/// Explicit spec from a degree and cycle strings, as used by corpus files.
pub fn explicit_spec(label: &str, degree: usize, generators: &[String]) -> Result<GroupSpec, SpecError> {
    let text = format!("perm({degree}): {}", generators.join("; "));
    Ok(GroupSpec {
        label: label.to_string(),
        source: parse_explicit(&text)?,
    })
}

fn cycle(points: impl IntoIterator<Item = usize>, degree: usize) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    if pts.len() < 2 {
        return Permutation::identity(degree);
    }
    Permutation::from_cycles(degree, &[pts]).expect("valid cycle")
}

/// Left-regular action of `gens` on `0..order` given a multiplication rule.
fn regular(order: usize, gens: &[usize], mul: impl Fn(usize, usize) -> usize) -> Vec<Permutation> {
    gens.iter()
        .map(|&g| {
            Permutation::from_images((0..order).map(|h| mul(g, h)).collect()).expect("group multiplication")
        })
        .collect()
}

/// Dicyclic group of order 4n: elements `a^k x^e` encoded as `k + 2n·e`.
fn dicyclic(n: usize) -> Vec<Permutation> {
    let m = 2 * n;
    let mul = |g: usize, h: usize| {
        let (k, e) = (g % m, g / m);
        let (j, f) = (h % m, h / m);
        if e == 0 {
            (k + j) % m + m * f
        } else if f == 0 {
            // a^k x a^j = a^(k-j) x
            (k + m - j) % m + m
        } else {
            // a^k x a^j x = a^(k-j) x² = a^(k-j+n)
            (k + m - j + n) % m
        }
    };
    regular(2 * m, &[1, m], mul)
}

/// Dihedral group of order 2n: elements `r^k s^e` encoded as `k + n·e`.
fn dihedral_regular(n: usize) -> Vec<Permutation> {
    let mul = |g: usize, h: usize| {
        let (k, e) = (g % n, g / n);
        let (j, f) = (h % n, h / n);
        let rot = if e == 0 { (k + j) % n } else { (k + n - j) % n };
        rot + n * ((e + f) % 2)
    };
    regular(2 * n, &[1 % (2 * n), n], mul)
}

impl GroupSource {
    pub fn realize(&self) -> Result<PermGroup, SpecError> {
        let gens = match self {
            GroupSource::Family { family, param } => {
                let n = *param;
                match family {
                    Family::Cyclic => vec![cycle(0..n, n)],
                    Family::Dihedral if n >= 3 => {
                        let reflection =
                            Permutation::from_images((0..n).map(|i| n - 1 - i).collect()).expect("reversal");
                        vec![cycle(0..n, n), reflection]
                    }
                    Family::Dihedral => dihedral_regular(n),
                    Family::Symmetric => vec![cycle(0..n, n), cycle(0..n.min(2), n)],
                    Family::Alternating => {
                        let mut g: Vec<Permutation> = (2..n).map(|k| cycle([0, 1, k], n)).collect();
                        if g.is_empty() {
                            g.push(Permutation::identity(n));
                        }
                        g
                    }
                    Family::Quaternion | Family::Dicyclic => dicyclic(n),
                }
            }
            GroupSource::Explicit { degree, generators } => generators
                .iter()
                .map(|g| {
                    Permutation::parse(g, *degree).map_err(|source| SpecError::Cycles {
                        generator: g.clone(),
                        source,
                    })
                })
                .collect::<Result<_, _>>()?,
            GroupSource::Product(l, r) => return Ok(l.realize()?.direct_product(&r.realize()?)),
        };
        Ok(PermGroup::new(gens).expect("realizations use nonempty generators of one degree"))
    }

    /// The two factors, for product specifications.
    pub fn factors(&self) -> Option<(&GroupSource, &GroupSource)> {
        match self {
            GroupSource::Product(l, r) => Some((l, r)),
            _ => None,
        }
    }
}

impl GroupSpec {
    pub fn realize(&self) -> Result<PermGroup, SpecError> {
        self.source.realize()
    }
}
