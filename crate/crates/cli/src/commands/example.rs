//! `example`: built-in fixtures as JSON files.

use anyhow::{bail, Result};
use catcover_core::builders::{Ladder, LadderBase};
use catcover_core::io::{bundle_to_json, category_to_json, filtered_to_json};
use catcover_core::{Example, LevelCategory};

use crate::args::ExampleArgs;
use crate::input;

const NAMES: &str = "\
gamma            Gamma (x and y with an inverse pair), covers z2 with 2 sheets
z2               the group of order 2
fan:n            the fan with n sheets over fan-base
fan-base         two parallel arrows a => b
ladder           the infinite ladder poset (truncated by --levels)
ladder-base      its base, two arrows between consecutive levels
discrete:k       k objects, identities only
terminal         one object
cyclic-group:m   the cyclic group of order m
";

pub fn print(args: &ExampleArgs) -> Result<String> {
    let Some(spec) = args.name else {
        return Ok(NAMES.to_owned());
    };
    let ex = input::example(spec)?;
    let mut text = match (ex, args.bundle) {
        (Example::Covering(b), true) => bundle_to_json(&b),
        (Example::Covering(b), false) => category_to_json(&b.total),
        (Example::Finite(c), false) => category_to_json(&c),
        (Example::Ladder, false) => filtered_to_json(&Ladder.truncate(args.levels)),
        (Example::LadderBase, false) => filtered_to_json(&LadderBase.truncate(args.levels)),
        (Example::Ladder, true) => bail!("the ladder covering is infinite; use `filtered verify --example ladder`"),
        (_, true) => bail!("`{spec}` is not a covering example"),
    };
    text.push('\n');
    Ok(text)
}
