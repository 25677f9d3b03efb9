use std::path::{Path, PathBuf};

use salvetti_core::fixtures::FixtureSpec;
use salvetti_core::io::{
    parse_arrangement, parse_chirotope, parse_covectors, parse_cw, parse_salvetti_poset, parse_sign_vectors, read_text,
};
use salvetti_core::mh::CWPoset;
use salvetti_core::om::{cocircuits_from_chirotope, from_arrangement, span_from_cocircuits};
use salvetti_core::{Error, OrientedMatroid, SignVector};

use crate::CliError;

pub const MAX_N_VAR: &str = "OM_SALVETTI_MAX_N";
const DEFAULT_MAX_N: usize = 12;

#[derive(Debug, Clone)]
pub enum Source {
    Fixture(FixtureSpec),
    File(PathBuf),
}

impl Source {
    pub fn new(fixture: Option<&str>, path: Option<&Path>) -> Result<Source, CliError> {
        match (fixture, path) {
            (Some(_), Some(_)) => Err(CliError::Usage("give either --fixture or --in, not both".into())),
            (Some(spec), None) => Ok(Source::Fixture(spec.parse()?)),
            (None, Some(path)) => Ok(Source::File(path.to_path_buf())),
            (None, None) => Err(CliError::Usage(
                "an input is required: --fixture <spec> or --in <path>".into(),
            )),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Source::Fixture(spec) => format!("fixture {spec}"),
            Source::File(path) => format!("file {}", path.display()),
        }
    }

    fn extension(path: &Path) -> &str {
        path.extension().and_then(|e| e.to_str()).unwrap_or("")
    }

    /// The oriented matroid behind the input, subject to the size cap.
    pub fn oriented_matroid(&self) -> Result<OrientedMatroid, CliError> {
        let cap = max_n()?;
        if let Source::Fixture(spec) = self {
            check_cap(spec.ground_set_size(), cap)?;
        }
        let om = match self {
            Source::Fixture(spec) => spec.generate()?,
            Source::File(path) => {
                let text = read_text(path)?;
                match Source::extension(path) {
                    "cov" => parse_covectors(&text)?,
                    "arr" => from_arrangement(&parse_arrangement(&text)?)?,
                    "chi" => span_from_cocircuits(&cocircuits_from_chirotope(&parse_chirotope(&text)?)?)?,
                    other => {
                        return Err(CliError::Usage(format!(
                            "cannot read an oriented matroid from a .{other} file (expected .cov, .arr or .chi)"
                        )))
                    }
                }
            }
        };
        check_cap(om.n(), cap)?;
        Ok(om)
    }

    pub fn has_extension(&self, ext: &str) -> bool {
        matches!(self, Source::File(path) if Source::extension(path) == ext)
    }

    /// Sign vectors to test against the axioms: a `.cov` file is read
    /// without validation, anything else goes through the usual route.
    pub fn sign_vectors(&self) -> Result<Vec<SignVector>, CliError> {
        if let Source::File(path) = self {
            if self.has_extension("cov") {
                let vectors = parse_sign_vectors(&read_text(path)?)?;
                check_cap(vectors.first().map_or(0, SignVector::len), max_n()?)?;
                return Ok(vectors);
            }
        }
        Ok(self.oriented_matroid()?.covectors().to_vec())
    }

    /// A `.cw` or `.poset` file as a CW poset.
    pub fn cw_poset(&self) -> Result<Option<CWPoset>, CliError> {
        let Source::File(path) = self else { return Ok(None) };
        match Source::extension(path) {
            "cw" => Ok(Some(parse_cw(&read_text(path)?)?)),
            "poset" => Ok(Some(parse_salvetti_poset(&read_text(path)?)?)),
            _ => Ok(None),
        }
    }
}

fn max_n() -> Result<usize, CliError> {
    match std::env::var(MAX_N_VAR) {
        Err(_) => Ok(DEFAULT_MAX_N),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_N_VAR} must be a nonnegative integer, got {v:?}"))),
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), CliError> {
    if n > cap {
        return Err(Error::GroundSetTooLarge(n, cap).into());
    }
    Ok(())
}
