//! Generator files, character-table files and report output.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::chartab::CharacterTable;
use crate::classes::ClassTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

pub const SCHEMA: u32 = 1;

pub const CAP_ENV: &str = "BLOCKFORGE_CAP";

/// Element cap: an explicit value, else `BLOCKFORGE_CAP`, else the default.
pub fn resolve_cap(explicit: Option<usize>) -> Result<usize> {
    if let Some(c) = explicit {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("{CAP_ENV} must be a positive integer, got '{v}'"))),
        Err(_) => Ok(crate::group::DEFAULT_CAP),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFile {
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<Perm>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Tokens of a line with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(b, t)| (line[..b].chars().count() + 1, t))
        .collect()
}

/// Parses the plain-text generator format.
///
/// ```text
/// degree 4
/// # name A4
/// 2 3 1 4
/// 1 3 4 2
/// ```
pub fn parse_generators(text: &str) -> Result<GeneratorFile> {
    let mut name = None;
    let mut degree = None;
    let mut generators = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end();
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(n) = rest.strip_prefix("name") {
                if n.starts_with(char::is_whitespace) {
                    name = Some(n.trim().to_string());
                }
            }
            continue;
        }
        let toks = tokens(line);
        let Some(d) = degree else {
            let (col, first) = toks[0];
            if first != "degree" {
                return Err(parse_err(lineno, col, "expected 'degree N'"));
            }
            let Some(&(col, value)) = toks.get(1) else {
                return Err(parse_err(lineno, line.chars().count() + 1, "missing degree"));
            };
            let d: usize = value
                .parse()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| parse_err(lineno, col, format!("invalid degree '{value}'")))?;
            if let Some(&(col, _)) = toks.get(2) {
                return Err(parse_err(lineno, col, "unexpected token after degree"));
            }
            degree = Some(d);
            continue;
        };
        let mut images = Vec::with_capacity(d);
        for &(col, t) in &toks {
            let v: usize = t
                .parse()
                .map_err(|_| parse_err(lineno, col, format!("invalid image '{t}'")))?;
            images.push(v);
        }
        if images.len() != d {
            return Err(parse_err(
                lineno,
                1,
                format!("expected {d} images, found {}", images.len()),
            ));
        }
        let perm = Perm::from_images_one_based(&images).map_err(|_| Error::NotABijection { line: Some(lineno) })?;
        generators.push(perm);
    }
    let degree = degree.ok_or_else(|| parse_err(1, 1, "missing 'degree N' line"))?;
    Ok(GeneratorFile {
        name,
        degree,
        generators,
    })
}

pub fn write_generators(file: &GeneratorFile) -> String {
    let mut out = format!("degree {}\n", file.degree);
    if let Some(n) = &file.name {
        let _ = writeln!(out, "# name {n}");
    }
    for g in &file.generators {
        let imgs: Vec<String> = g.images_one_based().iter().map(|i| i.to_string()).collect();
        out.push_str(&imgs.join(" "));
        out.push('\n');
    }
    out
}

impl GeneratorFile {
    pub fn group(&self, cap: usize) -> Result<PermGroup> {
        PermGroup::from_generators_with_cap(self.degree, self.generators.clone(), cap)
    }
}

/// A group resolved from a catalog name or a generator file.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub name: String,
    pub group: PermGroup,
    pub entry: Option<catalog::CatalogEntry>,
}

/// Resolves `spec` as a catalog name first, then as a generator file path.
pub fn load_group(spec: &str, cap: usize) -> Result<LoadedGroup> {
    if let Some(entry) = catalog::find(spec) {
        return Ok(LoadedGroup {
            name: entry.name.clone(),
            group: entry.group_with_cap(cap)?,
            entry: Some(entry),
        });
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::UnknownGroup(spec.to_string()));
    }
    let file = parse_generators(&std::fs::read_to_string(path)?)?;
    let name = file.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned())
    });
    Ok(LoadedGroup {
        name,
        group: file.group(cap)?,
        entry: None,
    })
}

/// Resolves a normal-subgroup spec inside `g`: a named subgroup of the
/// catalog entry, or a generator file.
pub fn load_normal(spec: &str, g: &LoadedGroup, cap: usize) -> Result<(String, PermGroup)> {
    if let Some(entry) = &g.entry {
        if let Some(n) = entry.normal_subgroup(&g.group, spec) {
            let name = entry
                .normal_subgroups
                .iter()
                .find(|(n, _)| n.eq_ignore_ascii_case(spec))
                .map_or_else(|| spec.to_string(), |(n, _)| n.clone());
            return Ok((name, n?));
        }
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::UnknownGroup(spec.to_string()));
    }
    let file = parse_generators(&std::fs::read_to_string(path)?)?;
    if file.degree != g.group.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.group.degree(),
            found: file.degree,
        });
    }
    let n = file.group(cap)?;
    if !n.is_subset_of(&g.group) {
        return Err(Error::NotSubgroup);
    }
    if !g.group.is_normal_subgroup(&n) {
        return Err(Error::NotNormal);
    }
    let name = file.name.unwrap_or_else(|| {
        path.file_stem()
            .map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned())
    });
    Ok((name, n))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassRecord {
    pub rep: Vec<usize>,
    pub size: u64,
    pub order: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub group: String,
    pub exponent: u64,
    pub classes: Vec<ClassRecord>,
    pub chars: Vec<Vec<Cyclotomic>>,
}

fn default_schema() -> u32 {
    SCHEMA
}

pub fn table_file(name: &str, tbl: &CharacterTable) -> TableFile {
    let ct = tbl.class_table();
    TableFile {
        schema: SCHEMA,
        group: name.to_string(),
        exponent: ct.exponent(),
        classes: ct
            .classes()
            .iter()
            .map(|c| ClassRecord {
                rep: c.representative.images_one_based(),
                size: c.size,
                order: c.element_order,
            })
            .collect(),
        chars: tbl.values().to_vec(),
    }
}

/// Serializes with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn table_to_json(name: &str, tbl: &CharacterTable) -> Result<String> {
    to_json(&table_file(name, tbl))
}

/// Rebuilds a table from its file form. The group is regenerated from the
/// class representatives and every relation is re-checked.
pub fn table_from_file(file: TableFile) -> Result<(String, CharacterTable)> {
    if file.schema != SCHEMA {
        return Err(Error::Validation(format!("unsupported schema {}", file.schema)));
    }
    let k = file.classes.len();
    if k == 0 {
        return Err(Error::Validation("table has no classes".into()));
    }
    let degree = file.classes[0].rep.len();
    let reps = file
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if c.rep.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: c.rep.len(),
                });
            }
            Perm::from_images_one_based(&c.rep)
                .map_err(|_| Error::Validation(format!("class {i}: representative is not a bijection")))
        })
        .collect::<Result<Vec<_>>>()?;
    let group = PermGroup::from_generators(degree, reps.clone())?;
    let ct = ClassTable::new(group);
    if ct.len() != k {
        return Err(Error::Validation(format!(
            "representatives generate a group with {} classes, file lists {k}",
            ct.len()
        )));
    }
    if ct.exponent() != file.exponent {
        return Err(Error::Validation(format!(
            "exponent {} differs from computed {}",
            file.exponent,
            ct.exponent()
        )));
    }
    let mut position = vec![usize::MAX; k];
    for (i, (rec, rep)) in file.classes.iter().zip(&reps).enumerate() {
        let c = ct.class_of(rep).expect("representative lies in the generated group");
        let class = ct.class(c);
        if position[c] != usize::MAX {
            return Err(Error::Validation(format!("classes {} and {i} coincide", position[c])));
        }
        if class.size != rec.size || class.element_order != rec.order {
            return Err(Error::Validation(format!(
                "class {i}: size/order {}/{} differ from computed {}/{}",
                rec.size, rec.order, class.size, class.element_order
            )));
        }
        position[c] = i;
    }
    if file.chars.len() != k || file.chars.iter().any(|r| r.len() != k) {
        return Err(Error::Validation(format!("expected a {k}x{k} table of values")));
    }
    let values = file
        .chars
        .iter()
        .map(|row| position.iter().map(|&i| row[i].clone()).collect())
        .collect();
    Ok((file.group, CharacterTable::from_values(ct, values)?))
}

pub fn parse_table(text: &str) -> Result<(String, CharacterTable)> {
    let file: TableFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    table_from_file(file)
}

pub fn load_table(path: &Path) -> Result<(String, CharacterTable)> {
    parse_table(&std::fs::read_to_string(path)?)
}

/// Writes `content` to `path`, or to stdout when no path is given.
pub fn write_report(content: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_name() {
        let f = parse_generators("# a comment\ndegree 4\n# name A4\n\n2 3 1 4\n1 3 4 2\n").unwrap();
        assert_eq!(f.name.as_deref(), Some("A4"));
        assert_eq!(f.degree, 4);
        assert_eq!(f.group(100).unwrap().order(), 12);
        assert_eq!(parse_generators(&write_generators(&f)).unwrap(), f);
    }

    #[test]
    fn bijection_error_names_the_line() {
        let err = parse_generators("degree 4\n2 1 3 4\n1 1 3 4\n").unwrap_err();
        assert_eq!(err.to_string(), "not a bijection at line 3");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_generators("degree 3\n1 x 3\n").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 3)),
            e => panic!("{e}"),
        }
        match parse_generators("deg 3\n").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 1)),
            e => panic!("{e}"),
        }
        assert!(matches!(
            parse_generators("degree 3\n1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn identity_line_allowed() {
        let f = parse_generators("degree 2\n1 2\n").unwrap();
        assert_eq!(f.group(10).unwrap().order(), 1);
    }

    #[test]
    fn table_round_trip_and_perturbation() {
        let g = catalog::lookup("S4").unwrap().group().unwrap();
        let tbl = CharacterTable::compute(g).unwrap();
        let json = table_to_json("S4", &tbl).unwrap();
        let (name, back) = parse_table(&json).unwrap();
        assert_eq!(name, "S4");
        assert_eq!(table_to_json(&name, &back).unwrap(), json);

        let mut file = table_file("S4", &tbl);
        file.chars[3][2] = &file.chars[3][2] + &Cyclotomic::one();
        let err = table_from_file(file).unwrap_err();
        assert!(err.to_string().contains("column orthogonality violated (classes"), "{err}");
    }

    #[test]
    fn unknown_spec() {
        assert!(matches!(load_group("NoSuchGroup", 100), Err(Error::UnknownGroup(_))));
        assert_eq!(load_group("a4", 100).unwrap().group.order(), 12);
    }
}
