//! The `msys/1` system-file format.
//!
//! A file is a list of `[kind NAME]` sections holding `key = value` lines;
//! `#` starts a comment. Section kinds are `system`, `point`, `settings`,
//! `values`, `relation`, `purity` and `probe`. Indices (`A[i][j]`,
//! component indices, groups) are 0-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use mahler_core::exact::rational::{fmt_q, parse_rational};
use mahler_core::exact::vars;
use mahler_core::systems::Orientation;
use mahler_core::{BigRational, MahlerSystem, Matrix, MultiPoly, RFMatrix, RatFunc, RationalPoint, Transform};
use num_bigint::BigUint;
use num_traits::Zero;

use crate::CliError;

pub const FORMAT_TAG: &str = "msys/1";

#[derive(Clone, Debug, PartialEq)]
pub struct SystemDef {
    pub name: String,
    pub vars: Vec<String>,
    pub t: Transform,
    /// The matrix as written, before any orientation conversion.
    pub a_input: RFMatrix,
    pub orientation: Orientation,
    pub f0: Vec<BigRational>,
    pub system: MahlerSystem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointDef {
    pub name: String,
    pub point: RationalPoint,
}

/// A value slot: component `index` of `system` at `point`, or a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueEntry {
    Component { system: String, index: usize, point: String },
    Constant(BigRational),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValuesDef {
    pub name: String,
    pub entries: Vec<ValueEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationDef {
    pub name: String,
    pub vars: Vec<String>,
    pub poly: MultiPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PurityDef {
    pub name: String,
    pub relation: String,
    /// Indeterminate indices of each group.
    pub groups: Vec<Vec<usize>>,
    pub gens: Vec<Vec<MultiPoly>>,
    /// Optional `[values]` section on which the generators must vanish.
    pub values: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeDef {
    pub name: String,
    pub systems: Vec<String>,
    pub points: Vec<String>,
    pub g: MultiPoly,
    pub gap: u64,
    pub count: usize,
    pub l_max: u64,
}

/// Numeric settings; every field may be overridden on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Settings {
    pub digits: Option<u32>,
    pub order: Option<u32>,
    pub k_max: Option<u64>,
    pub bound: Option<u64>,
    pub degree: Option<u32>,
    pub l_max: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SystemFile {
    pub systems: Vec<SystemDef>,
    pub points: Vec<PointDef>,
    pub settings: Settings,
    pub values: Vec<ValuesDef>,
    pub relations: Vec<RelationDef>,
    pub purity: Vec<PurityDef>,
    pub probes: Vec<ProbeDef>,
}

impl SystemFile {
    pub fn system(&self, name: &str) -> Result<&SystemDef, CliError> {
        self.systems.iter().find(|s| s.name == name).ok_or_else(|| CliError::Undefined(format!("system `{name}`")))
    }

    pub fn point(&self, name: &str) -> Result<&PointDef, CliError> {
        self.points.iter().find(|s| s.name == name).ok_or_else(|| CliError::Undefined(format!("point `{name}`")))
    }

    pub fn values_def(&self, name: &str) -> Result<&ValuesDef, CliError> {
        self.values.iter().find(|s| s.name == name).ok_or_else(|| CliError::Undefined(format!("values `{name}`")))
    }

    pub fn relation(&self, name: &str) -> Result<&RelationDef, CliError> {
        self.relations.iter().find(|s| s.name == name).ok_or_else(|| CliError::Undefined(format!("relation `{name}`")))
    }

    pub fn purity_def(&self, name: &str) -> Result<&PurityDef, CliError> {
        self.purity.iter().find(|s| s.name == name).ok_or_else(|| CliError::Undefined(format!("purity `{name}`")))
    }

    pub fn probe(&self, name: &str) -> Result<&ProbeDef, CliError> {
        self.probes.iter().find(|s| s.name == name).ok_or_else(|| CliError::Undefined(format!("probe `{name}`")))
    }
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    /// 1-based column where the value starts.
    col: usize,
    value: &'a str,
}

struct Section<'a> {
    kind: &'a str,
    name: &'a str,
    line: usize,
    lines: Vec<Line<'a>>,
}

impl<'a> Section<'a> {
    fn get(&self, key: &str) -> Option<&Line<'a>> {
        self.lines.iter().find(|l| l.key == key)
    }

    fn require(&self, key: &str) -> Result<&Line<'a>, CliError> {
        self.get(key).ok_or_else(|| CliError::Parse {
            line: self.line,
            col: 1,
            msg: format!("[{} {}] is missing `{key}`", self.kind, self.name),
        })
    }
}

fn perr(l: &Line, offset: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line: l.no, col: l.col + offset, msg: msg.into() }
}

fn core_err(l: &Line, e: mahler_core::Error) -> CliError {
    match e {
        mahler_core::Error::Parse { col, msg } => CliError::Parse { line: l.no, col: l.col + col - 1, msg },
        mahler_core::Error::DimensionMismatch(msg) => CliError::Dimension { line: l.no, col: l.col, msg },
        other => CliError::Parse { line: l.no, col: l.col, msg: other.to_string() },
    }
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn parse_rows(l: &Line) -> Result<Vec<Vec<BigUint>>, CliError> {
    let s = l.value.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| perr(l, 0, "expected a list of rows like [[1, 1], [1, 0]]"))?;
    let mut rows = Vec::new();
    let mut rest = inner;
    let base = l.value.len() - l.value.trim_start().len() + 1;
    while let Some(open) = rest.find('[') {
        let close = rest[open..].find(']').ok_or_else(|| perr(l, base, "unclosed row"))? + open;
        let offset = base + (inner.len() - rest.len()) + open + 1;
        let row = rest[open + 1..close]
            .split(',')
            .map(|x| x.trim().parse::<BigUint>().map_err(|_| perr(l, offset, format!("bad non-negative integer `{}`", x.trim()))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((row, offset));
        rest = &rest[close + 1..];
    }
    let n = rows.len();
    if n == 0 {
        return Err(perr(l, 0, "empty transform"));
    }
    for (row, offset) in &rows {
        if row.len() != n {
            return Err(CliError::Dimension {
                line: l.no,
                col: l.col + offset,
                msg: format!("row with {} entries in a {n}x{n} transform", row.len()),
            });
        }
    }
    Ok(rows.into_iter().map(|(r, _)| r).collect())
}

fn parse_index(key: &str, prefix: &str) -> Option<Vec<usize>> {
    let mut rest = key.strip_prefix(prefix)?;
    let mut out = Vec::new();
    while !rest.is_empty() {
        let r = rest.strip_prefix('[')?;
        let close = r.find(']')?;
        out.push(r[..close].trim().parse().ok()?);
        rest = &r[close + 1..];
    }
    Some(out)
}

fn parse_u64(l: &Line) -> Result<u64, CliError> {
    l.value.trim().parse().map_err(|_| perr(l, 0, format!("expected a non-negative integer, found `{}`", l.value.trim())))
}

fn parse_system(sec: &Section) -> Result<SystemDef, CliError> {
    let vl = sec.require("vars")?;
    let names: Vec<String> = split_list(vl.value).into_iter().map(String::from).collect();
    let tl = sec.require("T")?;
    let t = Transform::new(parse_rows(tl)?).map_err(|e| core_err(tl, e))?;
    if t.n() != names.len() {
        return Err(CliError::Dimension {
            line: tl.no,
            col: tl.col,
            msg: format!("{}x{} transform for {} variables", t.n(), t.n(), names.len()),
        });
    }
    let v = vars(&names);
    let mut entries: BTreeMap<(usize, usize), (RatFunc, usize)> = BTreeMap::new();
    let mut size = 0;
    for l in &sec.lines {
        if let Some(ix) = parse_index(l.key, "A") {
            if ix.len() != 2 {
                return Err(perr(l, 0, "matrix keys look like A[i][j]"));
            }
            let f = RatFunc::parse(l.value.trim(), v.clone()).map_err(|e| core_err(l, e))?;
            size = size.max(ix[0] + 1).max(ix[1] + 1);
            if entries.insert((ix[0], ix[1]), (f, l.no)).is_some() {
                return Err(perr(l, 0, format!("entry A[{}][{}] given twice", ix[0], ix[1])));
            }
        } else if !matches!(l.key, "vars" | "T" | "f0" | "orientation" | "size") {
            return Err(CliError::Parse { line: l.no, col: 1, msg: format!("unknown key `{}` in a system section", l.key) });
        }
    }
    if let Some(sl) = sec.get("size") {
        let declared = parse_u64(sl)? as usize;
        if declared < size {
            return Err(CliError::Dimension { line: sl.no, col: sl.col, msg: format!("entries beyond declared size {declared}") });
        }
        size = declared;
    }
    if size == 0 {
        return Err(perr(sec.require("T")?, 0, "system without matrix entries"));
    }
    let mut rows = vec![vec![RatFunc::zero(v.clone()); size]; size];
    for ((i, j), (f, _)) in entries {
        rows[i][j] = f;
    }
    let a_input = Matrix::from_rows(rows);
    let orientation = match sec.get("orientation") {
        None => Orientation::Forward,
        Some(l) => match l.value.trim() {
            "forward" => Orientation::Forward,
            "backward" => Orientation::Backward,
            other => return Err(perr(l, 0, format!("orientation must be forward or backward, found `{other}`"))),
        },
    };
    let f0 = match sec.get("f0") {
        Some(l) => {
            let xs = split_list(l.value)
                .into_iter()
                .map(|x| parse_rational(x).map_err(|e| core_err(l, e)))
                .collect::<Result<Vec<_>, _>>()?;
            if xs.len() != size {
                return Err(CliError::Dimension { line: l.no, col: l.col, msg: format!("f0 has {} entries for a system of size {size}", xs.len()) });
            }
            xs
        }
        None => {
            let mut xs = vec![BigRational::zero(); size];
            xs[0] = BigRational::from_integer(1.into());
            xs
        }
    };
    let system = MahlerSystem::with_orientation(t.clone(), a_input.clone(), orientation).map_err(|e| CliError::Invalid {
        line: sec.line,
        msg: format!("system `{}`: {e}", sec.name),
    })?;
    Ok(SystemDef { name: sec.name.to_string(), vars: names, t, a_input, orientation, f0, system })
}

fn parse_point(sec: &Section) -> Result<PointDef, CliError> {
    let l = sec.require("coords")?;
    let point = RationalPoint::parse(&split_list(l.value)).map_err(|e| core_err(l, e))?;
    Ok(PointDef { name: sec.name.to_string(), point })
}

fn parse_settings(sec: &Section) -> Result<Settings, CliError> {
    let mut s = Settings::default();
    for l in &sec.lines {
        let v = parse_u64(l)?;
        match l.key {
            "digits" => s.digits = Some(v as u32),
            "order" => s.order = Some(v as u32),
            "k_max" => s.k_max = Some(v),
            "bound" => s.bound = Some(v),
            "degree" => s.degree = Some(v as u32),
            "l_max" => s.l_max = Some(v),
            other => return Err(CliError::Parse { line: l.no, col: 1, msg: format!("unknown setting `{other}`") }),
        }
    }
    Ok(s)
}

fn parse_values(sec: &Section) -> Result<ValuesDef, CliError> {
    let l = sec.require("entries")?;
    let mut entries = Vec::new();
    for item in split_list(l.value) {
        if let Some((lhs, point)) = item.split_once('@') {
            let (system, rest) = lhs.split_once('[').ok_or_else(|| perr(l, 0, format!("expected SYSTEM[i]@POINT, found `{item}`")))?;
            let index = rest
                .strip_suffix(']')
                .and_then(|x| x.trim().parse().ok())
                .ok_or_else(|| perr(l, 0, format!("bad component index in `{item}`")))?;
            entries.push(ValueEntry::Component { system: system.trim().into(), index, point: point.trim().into() });
        } else {
            entries.push(ValueEntry::Constant(parse_rational(item).map_err(|e| core_err(l, e))?));
        }
    }
    Ok(ValuesDef { name: sec.name.to_string(), entries })
}

fn parse_relation(sec: &Section) -> Result<RelationDef, CliError> {
    let vl = sec.require("vars")?;
    let names: Vec<String> = split_list(vl.value).into_iter().map(String::from).collect();
    let pl = sec.require("poly")?;
    let poly = MultiPoly::parse(pl.value.trim(), vars(&names)).map_err(|e| core_err(pl, e))?;
    if poly.is_zero() {
        return Err(perr(pl, 0, "the zero polynomial is not a relation"));
    }
    Ok(RelationDef { name: sec.name.to_string(), vars: names, poly })
}

fn parse_purity(sec: &Section, relations: &[RelationDef]) -> Result<PurityDef, CliError> {
    let rl = sec.require("relation")?;
    let relation = rl.value.trim().to_string();
    let rel = relations
        .iter()
        .find(|r| r.name == relation)
        .ok_or_else(|| CliError::Undefined(format!("relation `{relation}` (line {})", rl.no)))?;
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut gens: BTreeMap<usize, Vec<MultiPoly>> = BTreeMap::new();
    for l in &sec.lines {
        if let Some(ix) = parse_index(l.key, "group").filter(|ix| ix.len() == 1) {
            let mut idx = Vec::new();
            for name in split_list(l.value) {
                let i = rel.vars.iter().position(|v| v == name).ok_or_else(|| perr(l, 0, format!("`{name}` is not an indeterminate of `{relation}`")))?;
                idx.push(i);
            }
            groups.insert(ix[0], idx);
        } else if let Some(ix) = parse_index(l.key, "gens").filter(|ix| ix.len() == 1) {
            let ps = l
                .value
                .split(';')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| MultiPoly::parse(x, rel.poly.vars().clone()).map_err(|e| core_err(l, e)))
                .collect::<Result<Vec<_>, _>>()?;
            gens.insert(ix[0], ps);
        } else if !matches!(l.key, "relation" | "values") {
            return Err(CliError::Parse { line: l.no, col: 1, msg: format!("unknown key `{}` in a purity section", l.key) });
        }
    }
    let r = groups.len();
    if groups.keys().copied().ne(0..r) || gens.keys().any(|&k| k >= r) {
        return Err(CliError::Parse { line: sec.line, col: 1, msg: "groups must be numbered 0, 1, … and every gens[i] needs a group[i]".into() });
    }
    let gens = (0..r).map(|i| gens.remove(&i).unwrap_or_default()).collect();
    let values = sec.get("values").map(|l| l.value.trim().to_string());
    Ok(PurityDef { name: sec.name.to_string(), relation, groups: groups.into_values().collect(), gens, values })
}

fn parse_probe(sec: &Section, systems: &[SystemDef]) -> Result<ProbeDef, CliError> {
    let sl = sec.require("systems")?;
    let names: Vec<String> = split_list(sl.value).into_iter().map(String::from).collect();
    let mut all_vars = Vec::new();
    for n in &names {
        let s = systems.iter().find(|s| &s.name == n).ok_or_else(|| CliError::Undefined(format!("system `{n}` (line {})", sl.no)))?;
        all_vars.extend(s.vars.iter().cloned());
    }
    let pl = sec.require("points")?;
    let points: Vec<String> = split_list(pl.value).into_iter().map(String::from).collect();
    let gl = sec.require("g")?;
    let g = MultiPoly::parse(gl.value.trim(), vars(&all_vars)).map_err(|e| core_err(gl, e))?;
    let get = |k: &str, d: u64| sec.get(k).map(parse_u64).unwrap_or(Ok(d));
    Ok(ProbeDef {
        name: sec.name.to_string(),
        systems: names,
        points,
        g,
        gap: get("gap", 2)?,
        count: get("count", 3)? as usize,
        l_max: get("l_max", 64)?,
    })
}

/// Parses a system file, resolving every cross-reference.
pub fn parse_system_file(text: &str) -> Result<SystemFile, CliError> {
    let mut sections: Vec<Section> = Vec::new();
    let mut saw_settings = false;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(head) = trimmed.strip_prefix('[') {
            let head = head.strip_suffix(']').ok_or_else(|| CliError::Parse { line: no, col: 1, msg: "unclosed section header".into() })?;
            let mut parts = head.split_whitespace();
            let kind = parts.next().unwrap_or("");
            let name = parts.next().unwrap_or("");
            if parts.next().is_some() {
                return Err(CliError::Parse { line: no, col: 1, msg: "section names cannot contain spaces".into() });
            }
            match kind {
                "settings" => {
                    if !name.is_empty() || saw_settings {
                        return Err(CliError::Parse { line: no, col: 1, msg: "only one unnamed [settings] section is allowed".into() });
                    }
                    saw_settings = true;
                }
                "system" | "point" | "values" | "relation" | "purity" | "probe" => {
                    if name.is_empty() {
                        return Err(CliError::Parse { line: no, col: 1, msg: format!("[{kind}] needs a name") });
                    }
                    if sections.iter().any(|s| s.kind == kind && s.name == name) {
                        return Err(CliError::Parse { line: no, col: 1, msg: format!("duplicate [{kind} {name}]") });
                    }
                }
                other => return Err(CliError::Parse { line: no, col: 2, msg: format!("unknown section kind `{other}`") }),
            }
            sections.push(Section { kind, name, line: no, lines: Vec::new() });
            continue;
        }
        if let Some(v) = trimmed.strip_prefix("format") {
            if let Some(v) = v.trim_start().strip_prefix('=') {
                if sections.is_empty() {
                    if v.trim() != FORMAT_TAG {
                        return Err(CliError::Parse { line: no, col: 1, msg: format!("unsupported format `{}`", v.trim()) });
                    }
                    continue;
                }
            }
        }
        let eq = content.find('=').ok_or_else(|| CliError::Parse { line: no, col: 1, msg: "expected `key = value`".into() })?;
        let key = content[..eq].trim();
        let sec = sections.last_mut().ok_or_else(|| CliError::Parse { line: no, col: 1, msg: "key outside of any section".into() })?;
        if sec.lines.iter().any(|l| l.key == key) {
            return Err(CliError::Parse { line: no, col: 1, msg: format!("key `{key}` given twice") });
        }
        sec.lines.push(Line { no, key, col: eq + 2, value: &content[eq + 1..] });
    }
    let mut file = SystemFile::default();
    for sec in sections.iter().filter(|s| s.kind == "system") {
        file.systems.push(parse_system(sec)?);
    }
    for sec in sections.iter().filter(|s| s.kind == "point") {
        file.points.push(parse_point(sec)?);
    }
    for sec in sections.iter().filter(|s| s.kind == "relation") {
        file.relations.push(parse_relation(sec)?);
    }
    for sec in &sections {
        match sec.kind {
            "settings" => file.settings = parse_settings(sec)?,
            "values" => file.values.push(parse_values(sec)?),
            "purity" => file.purity.push(parse_purity(sec, &file.relations)?),
            "probe" => file.probes.push(parse_probe(sec, &file.systems)?),
            _ => {}
        }
    }
    for v in &file.values {
        for e in &v.entries {
            if let ValueEntry::Component { system, index, point } = e {
                let s = file.system(system)?;
                let p = file.point(point)?;
                if *index >= s.system.m() {
                    return Err(CliError::Undefined(format!("component {index} of `{system}`, which has {}", s.system.m())));
                }
                if p.point.n() != s.vars.len() {
                    return Err(CliError::Undefined(format!("point `{point}` has {} coordinates but `{system}` has {} variables", p.point.n(), s.vars.len())));
                }
            }
        }
    }
    for p in &file.purity {
        if let Some(v) = &p.values {
            let vd = file.values_def(v)?;
            let m = file.relation(&p.relation)?.vars.len();
            if vd.entries.len() != m {
                return Err(CliError::Undefined(format!("values `{v}` has {} entries for {m} indeterminates", vd.entries.len())));
            }
        }
    }
    for p in &file.probes {
        for n in &p.points {
            file.point(n)?;
        }
        if p.points.len() != p.systems.len() {
            return Err(CliError::Undefined(format!("probe `{}` pairs {} systems with {} points", p.name, p.systems.len(), p.points.len())));
        }
    }
    Ok(file)
}

fn list_q(xs: &[BigRational]) -> String {
    xs.iter().map(fmt_q).collect::<Vec<_>>().join(", ")
}

/// Prints a file in normalized form; parsing the output gives back an equal
/// [`SystemFile`].
pub fn print_system_file(file: &SystemFile) -> String {
    let mut out = format!("format = {FORMAT_TAG}\n");
    let s = &file.settings;
    if *s != Settings::default() {
        out.push_str("\n[settings]\n");
        let fields: [(&str, Option<u64>); 6] = [
            ("digits", s.digits.map(u64::from)),
            ("order", s.order.map(u64::from)),
            ("k_max", s.k_max),
            ("bound", s.bound),
            ("degree", s.degree.map(u64::from)),
            ("l_max", s.l_max),
        ];
        for (k, v) in fields {
            if let Some(v) = v {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
    }
    for sys in &file.systems {
        let _ = writeln!(out, "\n[system {}]", sys.name);
        let _ = writeln!(out, "vars = {}", sys.vars.join(", "));
        let _ = writeln!(out, "T = {}", sys.t);
        let m = sys.a_input.nrows();
        let _ = writeln!(out, "size = {m}");
        for i in 0..m {
            for j in 0..m {
                let e = sys.a_input.get(i, j);
                if !e.is_zero() {
                    let _ = writeln!(out, "A[{i}][{j}] = {e}");
                }
            }
        }
        let _ = writeln!(out, "f0 = {}", list_q(&sys.f0));
        if sys.orientation == Orientation::Backward {
            out.push_str("orientation = backward\n");
        }
    }
    for p in &file.points {
        let _ = writeln!(out, "\n[point {}]\ncoords = {}", p.name, list_q(p.point.coords()));
    }
    for v in &file.values {
        let items: Vec<String> = v
            .entries
            .iter()
            .map(|e| match e {
                ValueEntry::Component { system, index, point } => format!("{system}[{index}]@{point}"),
                ValueEntry::Constant(c) => fmt_q(c),
            })
            .collect();
        let _ = writeln!(out, "\n[values {}]\nentries = {}", v.name, items.join(", "));
    }
    for r in &file.relations {
        let _ = writeln!(out, "\n[relation {}]\nvars = {}\npoly = {}", r.name, r.vars.join(", "), r.poly);
    }
    for p in &file.purity {
        let _ = writeln!(out, "\n[purity {}]\nrelation = {}", p.name, p.relation);
        if let Some(v) = &p.values {
            let _ = writeln!(out, "values = {v}");
        }
        let rel = file.relations.iter().find(|r| r.name == p.relation);
        for (i, g) in p.groups.iter().enumerate() {
            let names: Vec<&str> = g.iter().map(|&k| rel.map(|r| r.vars[k].as_str()).unwrap_or("?")).collect();
            let _ = writeln!(out, "group[{i}] = {}", names.join(", "));
        }
        for (i, g) in p.gens.iter().enumerate() {
            if !g.is_empty() {
                let _ = writeln!(out, "gens[{i}] = {}", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "));
            }
        }
    }
    for p in &file.probes {
        let _ = writeln!(
            out,
            "\n[probe {}]\nsystems = {}\npoints = {}\ng = {}\ngap = {}\ncount = {}\nl_max = {}",
            p.name,
            p.systems.join(", "),
            p.points.join(", "),
            p.g,
            p.gap,
            p.count,
            p.l_max
        );
    }
    out
}
