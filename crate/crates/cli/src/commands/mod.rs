mod category;
mod cover;
mod example;
mod filtered;

use anyhow::Result;

use crate::args::{Cli, Command, CoverCommand, FilteredCommand};
use crate::report::Report;

pub enum Output {
    Report(Report),
    /// Data printed as is, e.g. an example file.
    Raw(String),
}

pub fn run(cli: &Cli) -> Result<Output> {
    let report = match &cli.command {
        Command::Validate(a) => category::validate(a)?,
        Command::Info(a) => category::info(a)?,
        Command::Nerve(a) => category::nerve(a)?,
        Command::Zeta(a) => category::zeta(a)?,
        Command::Euler(a) => category::euler(a)?,
        Command::Cover(CoverCommand::Check(a)) => cover::check(a)?,
        Command::Cover(CoverCommand::Verify(a)) => cover::verify(a)?,
        Command::Filtered(FilteredCommand::Chi(a)) => filtered::chi(a)?,
        Command::Filtered(FilteredCommand::Verify(a)) => filtered::verify(a)?,
        Command::Example(a) => return example::print(a).map(Output::Raw),
    };
    Ok(Output::Report(report))
}
