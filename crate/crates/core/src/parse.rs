//! Text formats for simplicial sets, algebras and modules, plus the short
//! inline builder syntax used on the command line (`upper-tri 2`).
//!
//! Errors carry the file name, the 1-based line and the production that was
//! expected there.

use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;

use crate::algebra::{AlgebraSpec, Group};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multimodule::{Action, ActionTag, ModuleSpec};
use crate::scalar::{Field, Scalar};
use crate::simplicial::{Builder, SimplicialSet};

/// One `;`- or newline-separated statement with its source line.
#[derive(Debug)]
struct Item<'a> {
    line: usize,
    text: &'a str,
}

fn items(text: &str) -> Vec<Item<'_>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        for piece in content.split(';') {
            let piece = piece.trim();
            if !piece.is_empty() {
                out.push(Item { line: k + 1, text: piece });
            }
        }
    }
    out
}

struct Ctx<'a> {
    file: &'a str,
}

impl Ctx<'_> {
    fn err(&self, line: usize, expected: &str, found: &str) -> Error {
        Error::Parse {
            file: self.file.to_string(),
            line,
            message: format!("expected {expected}, found `{found}`"),
        }
    }

    fn wrap(&self, line: usize, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => Error::Parse { file: self.file.to_string(), line, message: other.to_string() },
        }
    }
}

/// `key=value` lookup; returns the value and the rest of the text.
fn take_key<'a>(text: &'a str, key: &str) -> Option<(&'a str, String)> {
    let start = text.find(&format!("{key}="))?;
    let after = &text[start + key.len() + 1..];
    let end = if after.starts_with('[') {
        matching_bracket(after)? + 1
    } else {
        after.find(char::is_whitespace).unwrap_or(after.len())
    };
    let rest = format!("{}{}", &text[..start], &after[end..]);
    Some((&after[..end], rest))
}

fn matching_bracket(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn bracket_list(s: &str) -> Option<Vec<String>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in inner.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur.trim().to_string());
    Some(out)
}

fn scalar(field: Field, s: &str) -> Option<Scalar> {
    let q = BigRational::from_str(s.trim()).ok()?;
    field.from_rational(&q).ok()
}

// ---- simplicial sets ----

const SSET_BASEPOINT: &str = "`basepoint <name>`";
const SSET_SIMPLEX: &str = "`simplex <name> dim=<d> faces=[<face>, ...]`";

pub fn parse_sset(text: &str, file: &str) -> Result<SimplicialSet> {
    let ctx = Ctx { file };
    let lines = items(text);
    let Some(first) = lines.first() else {
        return Err(ctx.err(1, SSET_BASEPOINT, "end of file"));
    };
    let mut words = first.text.split_whitespace();
    let name = match (words.next(), words.next(), words.next()) {
        (Some("basepoint"), Some(name), None) => name,
        _ => return Err(ctx.err(first.line, SSET_BASEPOINT, first.text)),
    };
    let mut builder = Builder::new(name);
    let mut last_line = first.line;
    for item in &lines[1..] {
        last_line = item.line;
        let bad = || ctx.err(item.line, SSET_SIMPLEX, item.text);
        let rest = item.text.strip_prefix("simplex ").ok_or_else(bad)?;
        let (dim, rest) = take_key(rest, "dim").ok_or_else(bad)?;
        let dim: usize = dim.parse().map_err(|_| ctx.err(item.line, "a natural number after `dim=`", dim))?;
        let (faces, rest) = match take_key(&rest, "faces") {
            Some((f, r)) => (bracket_list(f).ok_or_else(bad)?, r),
            None if dim == 0 => (Vec::new(), rest),
            None => return Err(bad()),
        };
        let mut names = rest.split_whitespace();
        let (Some(name), None) = (names.next(), names.next()) else {
            return Err(bad());
        };
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(ctx.err(
                item.line,
                &format!("{expected} faces d_0 ... d_{dim}"),
                &format!("{} faces", faces.len()),
            ));
        }
        let faces: Vec<&str> = faces.iter().map(String::as_str).collect();
        builder.simplex(name, dim, &faces);
    }
    builder.build().map_err(|e| ctx.wrap(last_line, e))
}

pub fn read_sset(path: &Path) -> Result<SimplicialSet> {
    parse_sset(&std::fs::read_to_string(path)?, &path.display().to_string())
}

/// A bundled name (`circle`, `wedge-3`, ...) or a path to an `.sset` file.
pub fn resolve_sset(reference: &str) -> Result<SimplicialSet> {
    let path = Path::new(reference);
    if path.exists() {
        return read_sset(path);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(reference);
    SimplicialSet::named(stem).ok_or_else(|| Error::Parse {
        file: reference.to_string(),
        line: 0,
        message: "expected an existing file or a bundled simplicial set name".into(),
    })
}

// ---- algebras ----

const ALG_BUILDER: &str =
    "`<builder> <args>` with builder one of trunc-poly <n>, upper-tri <n>, matrix <n>, group C<n>|S3, custom";
const ALG_HEADER: &str = "`algebra <builder> <args> field=<Q|F(p)>`";
const ALG_PRODUCT: &str = "`<ei>*<ej> = <linear combination>`";

/// Inline builder text such as `upper-tri 2` or `group C3 field=F(3)`.
/// `field` applies unless the text names its own.
pub fn parse_algebra_builder(text: &str, field: Field) -> Result<AlgebraSpec> {
    parse_builder_item(&Ctx { file: "<inline>" }, 1, text, field)
}

fn parse_builder_item(ctx: &Ctx, line: usize, text: &str, default: Field) -> Result<AlgebraSpec> {
    let (field, rest) = match take_key(text, "field") {
        Some((f, r)) => (Field::from_str(f).map_err(|e| ctx.wrap(line, e))?, r),
        None => (default, text.to_string()),
    };
    let words: Vec<&str> = rest.split_whitespace().collect();
    let size = |w: &str| w.parse::<usize>().map_err(|_| ctx.err(line, "a positive integer size", w));
    let alg = match words[..] {
        ["trunc-poly", n] => AlgebraSpec::trunc_poly(field, size(n)?),
        ["upper-tri", n] => AlgebraSpec::upper_tri(field, size(n)?),
        ["matrix", n] => AlgebraSpec::matrix_algebra(field, size(n)?),
        ["group", "S3"] => AlgebraSpec::group_algebra(field, Group::Symmetric3),
        ["group", g] => match g.strip_prefix('C') {
            Some(n) => AlgebraSpec::group_algebra(field, Group::Cyclic(size(n)?)),
            None => return Err(ctx.err(line, "a group `C<n>` or `S3`", g)),
        },
        _ => return Err(ctx.err(line, ALG_BUILDER, text)),
    };
    alg.map_err(|e| ctx.wrap(line, e))
}

pub fn parse_algebra(text: &str, file: &str) -> Result<AlgebraSpec> {
    parse_algebra_with(text, file, Field::Rationals)
}

/// Parses an algebra file; `default` is the field used when none is given.
pub fn parse_algebra_with(text: &str, file: &str, default: Field) -> Result<AlgebraSpec> {
    let ctx = Ctx { file };
    let all = items(text);
    let Some(first) = all.first() else {
        return Err(ctx.err(1, ALG_HEADER, "end of file"));
    };
    let header = first.text.strip_prefix("algebra").filter(|r| r.starts_with(char::is_whitespace));
    let Some(header) = header.map(str::trim) else {
        return Err(ctx.err(first.line, ALG_HEADER, first.text));
    };
    if !header.starts_with("custom") {
        if all.len() > 1 {
            return Err(ctx.err(all[1].line, "end of file after a builder algebra", all[1].text));
        }
        return parse_builder_item(&ctx, first.line, header, default);
    }
    parse_custom_algebra(&ctx, first.line, header["custom".len()..].trim(), &all[1..], default)
}

fn parse_custom_algebra(ctx: &Ctx, line: usize, header: &str, rest: &[Item], default: Field) -> Result<AlgebraSpec> {
    // `table:` may close the header line and carry the first product
    let (header, first_product) = match header.split_once("table:") {
        Some((h, p)) => (h.trim(), p.trim()),
        None => (header, ""),
    };
    let custom = "`algebra custom basis=[...] unit=[...] [field=<Q|F(p)>] table: <products>`";
    let (field, h) = match take_key(header, "field") {
        Some((f, r)) => (Field::from_str(f).map_err(|e| ctx.wrap(line, e))?, r),
        None => (default, header.to_string()),
    };
    let (basis, h) = take_key(&h, "basis").ok_or_else(|| ctx.err(line, custom, header))?;
    let (unit, h) = take_key(&h, "unit").ok_or_else(|| ctx.err(line, custom, header))?;
    if !h.trim().is_empty() {
        return Err(ctx.err(line, custom, h.trim()));
    }
    let names = bracket_list(basis).ok_or_else(|| ctx.err(line, "`basis=[<name>, ...]`", basis))?;
    let d = names.len();
    if d == 0 || names.iter().any(|n| n.is_empty()) {
        return Err(ctx.err(line, "`basis=[<name>, ...]`", basis));
    }
    let unit = parse_element(ctx, line, &names, field, unit)?;

    let mut table = vec![vec![vec![field.zero(); d]; d]; d];
    let mut seen = vec![vec![false; d]; d];
    let mut products: Vec<(usize, &str)> = Vec::new();
    if !first_product.is_empty() {
        products.push((line, first_product));
    }
    for item in rest {
        if item.text == "table:" {
            continue;
        }
        let text = item.text.strip_prefix("table:").map(str::trim).unwrap_or(item.text);
        products.push((item.line, text));
    }
    for (l, text) in products {
        let (lhs, rhs) = text.split_once('=').ok_or_else(|| ctx.err(l, ALG_PRODUCT, text))?;
        let (a, b) = lhs.split_once('*').ok_or_else(|| ctx.err(l, ALG_PRODUCT, text))?;
        let idx = |s: &str| {
            basis_index(&names, s.trim()).ok_or_else(|| ctx.err(l, "a basis name on the left of `=`", s.trim()))
        };
        let (i, j) = (idx(a)?, idx(b)?);
        if seen[i][j] {
            return Err(ctx.err(l, "each product given at most once", lhs.trim()));
        }
        seen[i][j] = true;
        table[i][j] = parse_combination(ctx, l, &names, field, rhs)?;
    }
    AlgebraSpec::custom(field, names, unit, table).map_err(|e| ctx.wrap(line, e))
}

/// A basis name or `e<i>`.
fn basis_index(names: &[String], s: &str) -> Option<usize> {
    names.iter().position(|n| n == s).or_else(|| {
        let i: usize = s.strip_prefix('e')?.parse().ok()?;
        (i < names.len()).then_some(i)
    })
}

/// Either a coordinate list `[c0, c1, ...]` or a linear combination.
fn parse_element(ctx: &Ctx, line: usize, names: &[String], field: Field, s: &str) -> Result<Vec<Scalar>> {
    if let Some(coords) = bracket_list(s) {
        if coords.len() != names.len() {
            return Err(ctx.err(line, &format!("{} coordinates", names.len()), s));
        }
        return coords
            .iter()
            .map(|c| scalar(field, c).ok_or_else(|| ctx.err(line, "a rational coordinate", c)))
            .collect();
    }
    parse_combination(ctx, line, names, field, s)
}

/// `2*x - 1/2 e3 + 1`, `0`. A term that is exactly a basis name is that basis
/// element, so `1` is the unit of `trunc-poly`.
fn parse_combination(ctx: &Ctx, line: usize, names: &[String], field: Field, s: &str) -> Result<Vec<Scalar>> {
    let expected = "a linear combination like `2*x - 1/2*y`";
    let mut out = vec![field.zero(); names.len()];
    let s = s.trim();
    if s.is_empty() {
        return Err(ctx.err(line, expected, s));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    for c in s.chars() {
        if (c == '+' || c == '-') && !cur.trim().is_empty() && !cur.trim_end().ends_with(['*', '^']) {
            terms.push((negative, cur.trim().to_string()));
            cur.clear();
            negative = c == '-';
        } else if (c == '+' || c == '-') && cur.trim().is_empty() {
            negative ^= c == '-';
        } else {
            cur.push(c);
        }
    }
    terms.push((negative, cur.trim().to_string()));
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(ctx.err(line, expected, s));
        }
        let (coef, idx) = if let Some(i) = basis_index(names, &term) {
            (field.one(), Some(i))
        } else if let Some(c) = scalar(field, &term) {
            if !c.is_zero() {
                return Err(ctx.err(line, "a basis element in every nonzero term", &term));
            }
            (c, None)
        } else {
            let split = term
                .find(|c: char| c == '*' || c.is_whitespace())
                .ok_or_else(|| ctx.err(line, expected, &term))?;
            let (c, n) = term.split_at(split);
            let n = n.trim_start_matches(|c: char| c == '*' || c.is_whitespace());
            let c = scalar(field, c).ok_or_else(|| ctx.err(line, "a rational coefficient", c))?;
            let i = basis_index(names, n).ok_or_else(|| ctx.err(line, "a basis name", n))?;
            (c, Some(i))
        };
        if let Some(i) = idx {
            let c = if neg { -&coef } else { coef };
            out[i] = &out[i] + &c;
        }
    }
    Ok(out)
}

/// An inline builder or a path to an algebra file.
pub fn resolve_algebra(reference: &str, field: Field) -> Result<AlgebraSpec> {
    let path = Path::new(reference);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return parse_algebra_with(&text, &path.display().to_string(), field);
    }
    parse_algebra_builder(reference, field)
}

// ---- modules ----

const MOD_HEADER: &str =
    "`module regular <algebra>`, `module symmetric <algebra>`, `module tensor-regular <k> <algebra>` or `module custom dim=<d>`";
const MOD_ACTION: &str = "`action <name> tag=<left|right|lr>`";
const MOD_OP: &str = "`op(<ei>)=[[...], ...]`";

/// Inline module kinds over a given algebra: `regular`, `symmetric`,
/// `tensor-regular <k>`.
pub fn module_builder(kind: &str, alg: &AlgebraSpec) -> Result<ModuleSpec> {
    let ctx = Ctx { file: "<inline>" };
    module_kind(&ctx, 1, kind, alg)
}

fn module_kind(ctx: &Ctx, line: usize, kind: &str, alg: &AlgebraSpec) -> Result<ModuleSpec> {
    let words: Vec<&str> = kind.split_whitespace().collect();
    let m = match words[..] {
        ["regular"] => ModuleSpec::regular_bimodule(alg),
        ["symmetric"] => ModuleSpec::symmetric_module(alg),
        ["tensor-regular", k] => {
            let k = k.parse().map_err(|_| ctx.err(line, "a positive integer", k))?;
            ModuleSpec::tensor_regular(alg, k)
        }
        _ => return Err(ctx.err(line, "`regular`, `symmetric` or `tensor-regular <k>`", kind)),
    };
    m.map_err(|e| ctx.wrap(line, e))
}

/// Parses a module file. Regular and symmetric modules name their algebra
/// inline (`module regular upper-tri 2`) or fall back to `algebra`; custom
/// modules always use `algebra`.
pub fn parse_module(text: &str, file: &str, algebra: Option<&AlgebraSpec>, field: Field) -> Result<ModuleSpec> {
    let ctx = Ctx { file };
    let all = items(text);
    let Some(first) = all.first() else {
        return Err(ctx.err(1, MOD_HEADER, "end of file"));
    };
    let words: Vec<&str> = first.text.split_whitespace().collect();
    let need_alg = |line| algebra.cloned().ok_or_else(|| ctx.err(line, "an algebra (inline or via --algebra)", first.text));
    match words[..] {
        ["module", "regular" | "symmetric", ..] | ["module", "tensor-regular", _, ..] => {
            let split = if words[1] == "tensor-regular" { 3 } else { 2 };
            let alg = if words.len() > split {
                parse_builder_item(&ctx, first.line, &words[split..].join(" "), field)?
            } else {
                need_alg(first.line)?
            };
            if all.len() > 1 {
                return Err(ctx.err(all[1].line, "end of file after a builder module", all[1].text));
            }
            module_kind(&ctx, first.line, &words[1..split].join(" "), &alg)
        }
        ["module", "custom", ..] => {
            let (dim, rest) = take_key(first.text, "dim").ok_or_else(|| ctx.err(first.line, MOD_HEADER, first.text))?;
            let dim: usize = dim.parse().map_err(|_| ctx.err(first.line, "a natural number after `dim=`", dim))?;
            let rest = rest.trim().trim_start_matches("module").trim().trim_start_matches("custom").trim();
            let alg = need_alg(first.line)?;
            parse_custom_module(&ctx, first.line, dim, rest, &all[1..], &alg)
        }
        _ => Err(ctx.err(first.line, MOD_HEADER, first.text)),
    }
}

fn parse_custom_module(
    ctx: &Ctx,
    line: usize,
    dim: usize,
    header_rest: &str,
    rest: &[Item],
    alg: &AlgebraSpec,
) -> Result<ModuleSpec> {
    let field = alg.field();
    let names = alg.basis_names().to_vec();
    // statements may share the header line: `module custom dim=2 action l tag=left`
    let mut stmts: Vec<(usize, String)> = Vec::new();
    let mut push_split = |l: usize, text: &str| {
        // `action` and `op(` may follow each other on one line
        let mut t = text.trim();
        while !t.is_empty() {
            let next = ["action ", "op("]
                .iter()
                .filter_map(|k| t[1..].find(k).map(|p| p + 1))
                .min()
                .unwrap_or(t.len());
            stmts.push((l, t[..next].trim().to_string()));
            t = t[next..].trim();
        }
    };
    push_split(line, header_rest);
    for item in rest {
        push_split(item.line, item.text);
    }

    let mut actions: Vec<(usize, Action, Vec<bool>)> = Vec::new();
    for (l, s) in stmts {
        if let Some(a) = s.strip_prefix("action ") {
            let (tag, a) = take_key(a, "tag").ok_or_else(|| ctx.err(l, MOD_ACTION, &s))?;
            let tag = match tag {
                "left" => ActionTag::Left,
                "right" => ActionTag::Right,
                "lr" => ActionTag::LR,
                _ => return Err(ctx.err(l, "`tag=left`, `tag=right` or `tag=lr`", tag)),
            };
            let mut w = a.split_whitespace();
            let (Some(name), None) = (w.next(), w.next()) else {
                return Err(ctx.err(l, MOD_ACTION, &s));
            };
            let operators = vec![Matrix::zeros(field, dim, dim); names.len()];
            actions.push((l, Action { name: name.to_string(), tag, operators }, vec![false; names.len()]));
        } else if let Some(o) = s.strip_prefix("op(") {
            let (e, m) = o.split_once(")=").ok_or_else(|| ctx.err(l, MOD_OP, &s))?;
            let i = basis_index(&names, e.trim()).ok_or_else(|| ctx.err(l, "a basis element inside `op(...)`", e))?;
            let Some((_, action, given)) = actions.last_mut() else {
                return Err(ctx.err(l, MOD_ACTION, &s));
            };
            if given[i] {
                return Err(ctx.err(l, "each operator given once per action", &s));
            }
            given[i] = true;
            action.operators[i] = parse_matrix(ctx, l, field, dim, m)?;
        } else {
            return Err(ctx.err(l, &format!("{MOD_ACTION} or {MOD_OP}"), &s));
        }
    }
    for (l, action, given) in &actions {
        if let Some(i) = given.iter().position(|g| !g) {
            return Err(ctx.err(*l, &format!("`op({})=` for action `{}`", names[i], action.name), "end of action"));
        }
    }
    ModuleSpec::new(alg.clone(), dim, actions.into_iter().map(|(_, a, _)| a).collect()).map_err(|e| ctx.wrap(line, e))
}

fn parse_matrix(ctx: &Ctx, line: usize, field: Field, dim: usize, s: &str) -> Result<Matrix> {
    let expected = format!("a {dim}x{dim} matrix `[[...], ...]`");
    let rows = bracket_list(s).ok_or_else(|| ctx.err(line, &expected, s))?;
    if rows.len() != dim {
        return Err(ctx.err(line, &expected, s));
    }
    let mut dense = Vec::new();
    for r in rows {
        let entries = bracket_list(&r).ok_or_else(|| ctx.err(line, &expected, &r))?;
        if entries.len() != dim {
            return Err(ctx.err(line, &expected, &r));
        }
        dense.push(
            entries
                .iter()
                .map(|c| scalar(field, c).ok_or_else(|| ctx.err(line, "a rational entry", c)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Matrix::from_dense(field, &dense).map_err(|e| ctx.wrap(line, e))
}

/// An inline module kind or a path to a module file.
pub fn resolve_module(reference: &str, algebra: Option<&AlgebraSpec>, field: Field) -> Result<ModuleSpec> {
    let path = Path::new(reference);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return parse_module(&text, &path.display().to_string(), algebra, field);
    }
    match algebra {
        Some(alg) => module_builder(reference, alg),
        None => Err(Error::Parse {
            file: reference.to_string(),
            line: 0,
            message: "expected a module file, or --algebra with an inline module kind".into(),
        }),
    }
}
