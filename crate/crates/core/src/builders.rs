//! Built-in example categories and coverings.
//!
//! These builders are the fixtures used by the tests and the CLI `example`
//! subcommand.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::category::{FiniteCategory, RawCategory};
use crate::filtered::{LevelCategory, LevelFunctor};
use crate::functor::{validate_functor, CatFunctor, InvalidFunctor, RawFunctor};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
}

/// A functor between two finite categories, kept in raw form until
/// validated.
#[derive(Clone, Debug)]
pub struct CoveringBundle {
    pub total: FiniteCategory,
    pub base: FiniteCategory,
    pub map: RawFunctor,
}

impl CoveringBundle {
    pub fn functor(&self) -> Result<CatFunctor, InvalidFunctor> {
        validate_functor(&self.map, self.total.clone(), self.base.clone())
    }
}

pub fn terminal() -> FiniteCategory {
    let mut raw = RawCategory::new();
    raw.add_object("*");
    raw.build().expect("terminal category")
}

/// The group `Z_2 = {1, -1}` as a one-object category.
pub fn z2() -> FiniteCategory {
    let mut raw = RawCategory::new();
    raw.add_object("*")
        .add_morphism("-1", "*", "*")
        .add_composite("-1", "-1", "1_*");
    raw.build().expect("Z_2")
}

/// Two objects joined by an isomorphism `f: x → y` and its inverse.
pub fn gamma() -> FiniteCategory {
    let mut raw = RawCategory::new();
    raw.add_object("x")
        .add_object("y")
        .add_morphism("f", "x", "y")
        .add_morphism("f^-1", "y", "x")
        .add_composite("f^-1", "f", "1_x")
        .add_composite("f", "f^-1", "1_y");
    raw.build().expect("Gamma")
}

/// The two-sheeted covering `Γ → Z_2` sending `f` and `f^-1` to `-1`.
pub fn gamma_covering() -> CoveringBundle {
    let mut map = RawFunctor::default();
    for x in ["x", "y"] {
        map.object_map.insert(x.into(), "*".into());
    }
    for f in ["f", "f^-1"] {
        map.morphism_map.insert(f.into(), "-1".into());
    }
    CoveringBundle {
        total: gamma(),
        base: z2(),
        map,
    }
}

/// The cyclic group of order `m` as a one-object category with morphisms
/// `1_*, g^1, …, g^{m-1}`.
pub fn cyclic_group(m: usize) -> Result<FiniteCategory, BuildError> {
    if m == 0 {
        return Err(BuildError::BadParameter("cyclic group order must be at least 1".into()));
    }
    let name = |k: usize| if k == 0 { "1_*".to_owned() } else { format!("g^{k}") };
    let mut raw = RawCategory::new();
    raw.add_object("*");
    for k in 1..m {
        raw.add_morphism(name(k), "*", "*");
    }
    for a in 1..m {
        for b in 1..m {
            raw.add_composite(name(a), name(b), name((a + b) % m));
        }
    }
    Ok(raw.build().expect("cyclic group"))
}

/// Discrete category on objects `d0, …, d{k-1}`.
pub fn discrete(k: usize) -> Result<FiniteCategory, BuildError> {
    if k == 0 {
        return Err(BuildError::BadParameter(
            "discrete category needs at least one object".into(),
        ));
    }
    let names: Vec<String> = (0..k).map(|i| format!("d{i}")).collect();
    Ok(FiniteCategory::discrete(&names).expect("discrete category"))
}

/// `a ⇉ b` with parallel morphisms `h1, h2`.
pub fn fan_base() -> FiniteCategory {
    let mut raw = RawCategory::new();
    raw.add_object("a")
        .add_object("b")
        .add_morphism("h1", "a", "b")
        .add_morphism("h2", "a", "b");
    raw.build().expect("parallel pair")
}

/// The `n`-sheeted covering of `a ⇉ b` by the cyclic fan:
/// `f_i: x_i → y_i` over `h1` and `g_i: x_i → y_{i+1}` (indices mod `n`)
/// over `h2`.
pub fn fan(n: usize) -> Result<CoveringBundle, BuildError> {
    if n == 0 {
        return Err(BuildError::BadParameter("number of sheets must be at least 1".into()));
    }
    let mut raw = RawCategory::new();
    for i in 1..=n {
        raw.add_object(format!("x{i}"));
    }
    for i in 1..=n {
        raw.add_object(format!("y{i}"));
    }
    let mut map = RawFunctor::default();
    for i in 1..=n {
        let next = i % n + 1;
        raw.add_morphism(format!("f{i}"), format!("x{i}"), format!("y{i}"));
        raw.add_morphism(format!("g{i}"), format!("x{i}"), format!("y{next}"));
        map.object_map.insert(format!("x{i}"), "a".into());
        map.object_map.insert(format!("y{i}"), "b".into());
        map.morphism_map.insert(format!("f{i}"), "h1".into());
        map.morphism_map.insert(format!("g{i}"), "h2".into());
    }
    Ok(CoveringBundle {
        total: raw.build().expect("fan category"),
        base: fan_base(),
        map,
    })
}

/// The poset on `x_i, y_i` (`i ∈ ℕ`) with a single morphism `u_n → v_m` for
/// every `n < m`. Object level is the index.
#[derive(Clone, Copy, Debug, Default)]
pub struct Ladder;

/// `b_0 → b_1 → …` with `Hom(b_n, b_m) = {φ⁰, φ¹}` for `n < m`, composing
/// by adding superscripts mod 2.
#[derive(Clone, Copy, Debug, Default)]
pub struct LadderBase;

/// `Ladder → LadderBase`: `x_i, y_i ↦ b_i`; same-letter arrows go to `φ⁰`,
/// cross arrows to `φ¹`.
#[derive(Clone, Copy, Debug, Default)]
pub struct LadderProjection;

fn ladder_object(name: &str) -> (char, usize) {
    let mut chars = name.chars();
    let letter = chars.next().expect("nonempty object name");
    (letter, chars.as_str().parse().expect("ladder object index"))
}

fn ladder_arrow(name: &str) -> (&str, &str) {
    name.trim_start_matches('(')
        .trim_end_matches(')')
        .split_once(',')
        .expect("ladder arrow name")
}

fn base_arrow(name: &str) -> (usize, usize, usize) {
    // phi{k}_{n}_{m}
    let rest = name.strip_prefix("phi").expect("base arrow name");
    let mut parts = rest.split('_').map(|s| s.parse::<usize>().expect("base arrow index"));
    (parts.next().unwrap(), parts.next().unwrap(), parts.next().unwrap())
}

impl LevelCategory for Ladder {
    fn objects_at(&self, level: usize) -> Vec<String> {
        vec![format!("x{level}"), format!("y{level}")]
    }

    fn arrows(&self, source: &str, target: &str) -> Vec<String> {
        vec![format!("({source},{target})")]
    }

    fn compose(&self, g: &str, f: &str) -> String {
        let (u, _) = ladder_arrow(f);
        let (_, w) = ladder_arrow(g);
        format!("({u},{w})")
    }
}

impl LevelCategory for LadderBase {
    fn objects_at(&self, level: usize) -> Vec<String> {
        vec![format!("b{level}")]
    }

    fn arrows(&self, source: &str, target: &str) -> Vec<String> {
        let (_, n) = ladder_object(source);
        let (_, m) = ladder_object(target);
        vec![format!("phi0_{n}_{m}"), format!("phi1_{n}_{m}")]
    }

    fn compose(&self, g: &str, f: &str) -> String {
        let (j, _, l) = base_arrow(g);
        let (i, n, _) = base_arrow(f);
        format!("phi{}_{n}_{l}", (i + j) % 2)
    }
}

impl LevelFunctor for LadderProjection {
    fn map_object(&self, x: &str) -> String {
        format!("b{}", ladder_object(x).1)
    }

    fn map_arrow(&self, f: &str) -> String {
        let (u, v) = ladder_arrow(f);
        let (lu, n) = ladder_object(u);
        let (lv, m) = ladder_object(v);
        format!("phi{}_{n}_{m}", usize::from(lu != lv))
    }
}

/// Names accepted by [`build_example`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleSpec {
    Gamma,
    Z2,
    Fan(usize),
    FanBase,
    Ladder,
    LadderBase,
    Discrete(usize),
    Terminal,
    CyclicGroup(usize),
}

impl FromStr for ExampleSpec {
    type Err = BuildError;

    /// Parameters are written `name:k` or `name(k)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, param) = match s.split_once([':', '(']) {
            Some((name, rest)) => (name, Some(rest.trim_end_matches(')'))),
            None => (s, None),
        };
        let number = |what: &str| -> Result<usize, BuildError> {
            let p = param.ok_or_else(|| BuildError::BadParameter(format!("`{name}` needs {what}")))?;
            p.parse()
                .map_err(|_| BuildError::BadParameter(format!("`{p}` is not a valid {what}")))
        };
        let no_param = |spec| match param {
            None => Ok(spec),
            Some(_) => Err(BuildError::BadParameter(format!("`{name}` takes no parameter"))),
        };
        match name {
            "gamma" => no_param(ExampleSpec::Gamma),
            "z2" => no_param(ExampleSpec::Z2),
            "fan" => Ok(ExampleSpec::Fan(number("a sheet count")?)),
            "fan-base" => no_param(ExampleSpec::FanBase),
            "ladder" => no_param(ExampleSpec::Ladder),
            "ladder-base" => no_param(ExampleSpec::LadderBase),
            "discrete" => Ok(ExampleSpec::Discrete(number("an object count")?)),
            "terminal" => no_param(ExampleSpec::Terminal),
            "cyclic-group" => Ok(ExampleSpec::CyclicGroup(number("a group order")?)),
            _ => Err(BuildError::UnknownExample(s.to_owned())),
        }
    }
}

impl fmt::Display for ExampleSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleSpec::Gamma => write!(out, "gamma"),
            ExampleSpec::Z2 => write!(out, "z2"),
            ExampleSpec::Fan(n) => write!(out, "fan:{n}"),
            ExampleSpec::FanBase => write!(out, "fan-base"),
            ExampleSpec::Ladder => write!(out, "ladder"),
            ExampleSpec::LadderBase => write!(out, "ladder-base"),
            ExampleSpec::Discrete(k) => write!(out, "discrete:{k}"),
            ExampleSpec::Terminal => write!(out, "terminal"),
            ExampleSpec::CyclicGroup(m) => write!(out, "cyclic-group:{m}"),
        }
    }
}

/// What a built example provides.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Example {
    /// A single finite category.
    Finite(FiniteCategory),
    /// A finite category together with its covering of a base.
    Covering(CoveringBundle),
    /// The infinite ladder poset with its projection to [`LadderBase`].
    Ladder,
    /// The infinite base of the ladder covering.
    LadderBase,
}

impl Example {
    /// The (total) finite category, if the example is finite.
    pub fn category(&self) -> Option<&FiniteCategory> {
        match self {
            Example::Finite(c) => Some(c),
            Example::Covering(b) => Some(&b.total),
            Example::Ladder | Example::LadderBase => None,
        }
    }
}

pub fn build_example(spec: ExampleSpec) -> Result<Example, BuildError> {
    Ok(match spec {
        ExampleSpec::Gamma => Example::Covering(gamma_covering()),
        ExampleSpec::Z2 => Example::Finite(z2()),
        ExampleSpec::Fan(n) => Example::Covering(fan(n)?),
        ExampleSpec::FanBase => Example::Finite(fan_base()),
        ExampleSpec::Ladder => Example::Ladder,
        ExampleSpec::LadderBase => Example::LadderBase,
        ExampleSpec::Discrete(k) => Example::Finite(discrete(k)?),
        ExampleSpec::Terminal => Example::Finite(terminal()),
        ExampleSpec::CyclicGroup(m) => Example::Finite(cyclic_group(m)?),
    })
}

/// Every finite covering shipped with the crate, with a label.
pub fn bundled_coverings() -> Vec<(String, CoveringBundle)> {
    let mut out = vec![("gamma -> z2".to_owned(), gamma_covering())];
    for n in [1, 2, 3, 5] {
        out.push((format!("fan:{n}"), fan(n).expect("n >= 1")));
    }
    out
}

/// Every finite category shipped with the crate, with a label.
pub fn bundled_categories() -> Vec<(String, FiniteCategory)> {
    let mut out = vec![
        ("terminal".to_owned(), terminal()),
        ("z2".to_owned(), z2()),
        ("gamma".to_owned(), gamma()),
        ("fan-base".to_owned(), fan_base()),
    ];
    for n in [1, 2, 3, 5] {
        out.push((format!("fan:{n}"), fan(n).expect("n >= 1").total));
    }
    for k in [1, 2, 4] {
        out.push((format!("discrete:{k}"), discrete(k).expect("k >= 1")));
    }
    for m in 1..=6 {
        out.push((format!("cyclic-group:{m}"), cyclic_group(m).expect("m >= 1")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_shapes() {
        let g = gamma();
        assert_eq!((g.num_objects(), g.num_morphisms()), (2, 4));
        let e = fan(3).unwrap();
        assert_eq!(e.total.num_objects(), 6);
        assert_eq!(e.base.num_objects(), 2);
        assert!(e.functor().is_ok());
        assert_eq!(discrete(0).unwrap_err(), BuildError::BadParameter("discrete category needs at least one object".into()));
    }

    #[test]
    fn every_bundled_category_is_valid_and_round_trips() {
        for (name, c) in bundled_categories() {
            let again = c.to_raw().build().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(again, c, "{name}");
        }
    }

    #[test]
    fn predicates_on_examples() {
        let a = fan(4).unwrap().total;
        assert!(a.is_acyclic() && !a.is_groupoid() && a.is_poset());
        let g = gamma();
        assert!(g.is_groupoid() && !g.is_acyclic());
        let d = discrete(3).unwrap();
        assert!(d.is_acyclic() && d.is_groupoid() && d.is_discrete() && d.is_poset());
        assert!(!fan_base().is_poset());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("fan:3".parse(), Ok(ExampleSpec::Fan(3)));
        assert_eq!("fan(3)".parse(), Ok(ExampleSpec::Fan(3)));
        assert_eq!("cyclic-group:5".parse(), Ok(ExampleSpec::CyclicGroup(5)));
        assert_eq!("ladder-base".parse(), Ok(ExampleSpec::LadderBase));
        assert!(matches!("fan".parse::<ExampleSpec>(), Err(BuildError::BadParameter(_))));
        assert!(matches!("nope".parse::<ExampleSpec>(), Err(BuildError::UnknownExample(_))));
        for spec in [ExampleSpec::Discrete(2), ExampleSpec::Gamma, ExampleSpec::CyclicGroup(4)] {
            assert_eq!(spec.to_string().parse(), Ok(spec));
        }
    }

    #[test]
    fn cyclic_groups_have_m_morphisms() {
        for m in 1..=6 {
            let c = cyclic_group(m).unwrap();
            assert_eq!(c.num_morphisms(), m);
            assert!(c.is_groupoid());
        }
    }
}
