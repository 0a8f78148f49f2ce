//! Group inputs: builder names with parameters, presentation text or a
//! file holding presentation text.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use fpknot_core::builders::{
    coxeter_quotient, dyck_group, klein_group, klein_group_from_wirtinger, paper_branched_cover,
};
use fpknot_core::{parse_presentation, parse_word, GeneratorMap, Presentation, PretzelParams};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Klein,
    Wirtinger,
    Coxeter,
    Dyck,
    PaperDbc,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Klein => "klein",
            Kind::Wirtinger => "wirtinger",
            Kind::Coxeter => "coxeter",
            Kind::Dyck => "dyck",
            Kind::PaperDbc => "paper-dbc",
        }
    }

    pub fn build(self, l: i64, m: i64, n: i64) -> Result<Presentation> {
        let pretzel = || PretzelParams::new(l, m, n);
        Ok(match self {
            Kind::Klein => klein_group(pretzel()?),
            Kind::Wirtinger => klein_group_from_wirtinger(pretzel()?)?,
            Kind::Coxeter => coxeter_quotient(pretzel()?),
            Kind::Dyck => dyck_group(l, m, n)?,
            Kind::PaperDbc => paper_branched_cover(pretzel()?),
        })
    }
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Kind::from_str_ci(s).ok_or_else(|| CliError::Input(format!("unknown group kind `{s}`")))
    }
}

impl Kind {
    fn from_str_ci(s: &str) -> Option<Self> {
        <Kind as ValueEnum>::from_str(s, true).ok()
    }
}

/// Where a group comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Builder(Kind, [i64; 3]),
    Text(String),
    File(String),
}

impl GroupSpec {
    /// `kind:l,m,n`, presentation text starting with `<`, or a file path.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('<') {
            return Ok(GroupSpec::Text(t.to_string()));
        }
        if let Some((kind, args)) = t.split_once(':') {
            if let Some(kind) = Kind::from_str_ci(kind) {
                let nums = args
                    .split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| CliError::Input(format!("bad parameters in `{t}`: {e}")))?;
                let [l, m, n] = nums[..] else {
                    return Err(CliError::Input(format!("`{t}` needs three parameters")));
                };
                return Ok(GroupSpec::Builder(kind, [l, m, n]));
            }
        }
        Ok(GroupSpec::File(t.to_string()))
    }

    pub fn load(&self) -> Result<Presentation> {
        match self {
            GroupSpec::Builder(kind, [l, m, n]) => kind.build(*l, *m, *n),
            GroupSpec::Text(text) => Ok(parse_presentation(text)?),
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                Ok(parse_presentation(&text)?)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Builder(kind, [l, m, n]) => write!(f, "{}:{l},{m},{n}", kind.as_str()),
            GroupSpec::Text(t) => f.write_str(t),
            GroupSpec::File(p) => f.write_str(p),
        }
    }
}

/// Parse `x=w, y=w'` into images over the target alphabet. Separators are
/// commas or semicolons.
pub fn parse_map(text: &str, target: &Presentation) -> Result<GeneratorMap> {
    let mut map = GeneratorMap::new();
    for part in text
        .split([',', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
    {
        let (name, word) = part
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("`{part}` is not of the form name=word")))?;
        let name = name.trim().to_string();
        let w = parse_word(word, target.generators())?;
        if map.insert(name.clone(), w).is_some() {
            return Err(CliError::Input(format!(
                "generator `{name}` assigned twice"
            )));
        }
    }
    Ok(map)
}

/// Check that every key of `map` names a source generator.
pub fn check_map_keys(map: &GeneratorMap, source: &Presentation) -> Result<()> {
    for k in map.keys() {
        if source.generator_index(k).is_none() {
            return Err(CliError::Input(format!("`{k}` is not a source generator")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_forms() {
        assert_eq!(
            GroupSpec::parse("klein:2,3,-5").unwrap(),
            GroupSpec::Builder(Kind::Klein, [2, 3, -5])
        );
        assert_eq!(
            GroupSpec::parse("paper-dbc:2,3,3").unwrap(),
            GroupSpec::Builder(Kind::PaperDbc, [2, 3, 3])
        );
        assert_eq!(
            GroupSpec::parse(" < a | a^2 > ").unwrap(),
            GroupSpec::Text("< a | a^2 >".into())
        );
        assert_eq!(
            GroupSpec::parse("groups/k.txt").unwrap(),
            GroupSpec::File("groups/k.txt".into())
        );
        assert!(GroupSpec::parse("dyck:2,3").is_err());
        assert!(GroupSpec::parse("dyck:2,x,3").is_err());
        assert_eq!(
            GroupSpec::parse("klein:2,3,3").unwrap().to_string(),
            "klein:2,3,3"
        );
    }

    #[test]
    fn builders_and_errors() {
        assert_eq!(
            GroupSpec::parse("dyck:2,3,5")
                .unwrap()
                .load()
                .unwrap()
                .to_string(),
            "< u, v | u^2, v^3, (u*v)^5 >"
        );
        assert!(GroupSpec::parse("wirtinger:-2,3,3")
            .unwrap()
            .load()
            .is_err());
        assert!(GroupSpec::parse("/nonexistent/file")
            .unwrap()
            .load()
            .is_err());
    }

    #[test]
    fn maps() {
        let target = parse_presentation("< a, b | a^2 >").unwrap();
        let m = parse_map("x=a*b, y = b^-1; z=1", &target).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m["z"].is_empty());
        assert!(parse_map("x", &target).is_err());
        assert!(parse_map("x=c", &target).is_err());
        assert!(parse_map("x=a, x=b", &target).is_err());
        let source = parse_presentation("< x, y | >").unwrap();
        assert!(check_map_keys(&m, &source).is_err());
    }
}
