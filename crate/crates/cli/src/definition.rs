//! Line-oriented definition files declaring groups, monoids, homomorphisms
//! and embedding problems. The grammar is documented in `docs/FORMAT.md`.

use std::collections::HashMap;
use std::sync::Arc;

use semikernel::monoid::RowMonoRule;
use semikernel::{
    generate_monoid, group_by_name, hom_from_images, Element, FiniteGroup, FiniteMonoid, MonoidHom,
    RowMonomialMatrix, Transformation,
};

#[derive(Debug, thiserror::Error)]
pub enum DefinitionError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}unknown object {name}", location(*line))]
    UnknownObject { line: usize, name: String },
    #[error("line {line}: {name} is already declared")]
    Duplicate { line: usize, name: String },
    #[error("{}{name} is not a {expected}", location(*line))]
    WrongKind {
        line: usize,
        name: String,
        expected: &'static str,
    },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: semikernel::Error,
    },
}

impl DefinitionError {
    /// The library error behind an invalid declaration, if any.
    pub fn library_error(&self) -> Option<&semikernel::Error> {
        match self {
            DefinitionError::Invalid { source, .. } => Some(source),
            _ => None,
        }
    }
}

/// Lookups from the command line use line `0`.
fn location(line: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!("line {line}: ")
    }
}

type Parsed<T> = std::result::Result<T, DefinitionError>;

/// A group or monoid together with its user-facing labels: label `l`
/// (1-based) names element `labels[l - 1]`.
#[derive(Clone, Debug)]
pub struct Structure {
    pub monoid: Arc<FiniteMonoid>,
    pub labels: Vec<usize>,
    pub is_group: bool,
}

impl Structure {
    /// Labels follow the enumeration order.
    pub fn enumerated(monoid: Arc<FiniteMonoid>, is_group: bool) -> Self {
        let labels = (0..monoid.len()).collect();
        Self {
            monoid,
            labels,
            is_group,
        }
    }

    pub fn group(&self) -> semikernel::Result<FiniteGroup> {
        FiniteGroup::from_monoid(self.monoid.clone())
    }

    /// 1-based label of element `x`.
    pub fn label_of(&self, x: usize) -> usize {
        self.labels
            .iter()
            .position(|&y| y == x)
            .expect("every element is labelled")
            + 1
    }
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub base: String,
    pub alpha: String,
}

#[derive(Clone, Debug)]
pub enum Object {
    Structure(Structure),
    Hom(MonoidHom),
    Problem(Problem),
}

/// Declarations in file order. Library group names resolve without a
/// declaration unless shadowed.
#[derive(Clone, Debug, Default)]
pub struct Definitions {
    names: Vec<String>,
    objects: HashMap<String, Object>,
}

impl Definitions {
    pub fn parse(text: &str, cap: usize) -> Parsed<Self> {
        let mut defs = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let mut cur = Cursor::new(content, line);
            let (name, object) = defs.declaration(&mut cur, cap)?;
            if defs.objects.contains_key(&name) {
                return Err(DefinitionError::Duplicate { line, name });
            }
            defs.names.push(name.clone());
            defs.objects.insert(name, object);
        }
        Ok(defs)
    }

    pub fn get(&self, name: &str) -> Option<Object> {
        if let Some(o) = self.objects.get(name) {
            return Some(o.clone());
        }
        group_by_name(name)
            .map(|g| Object::Structure(Structure::enumerated(g.monoid().clone(), true)))
    }

    pub fn structure(&self, name: &str, line: usize) -> Parsed<Structure> {
        match self.lookup(name, line)? {
            Object::Structure(s) => Ok(s),
            _ => Err(wrong_kind(name, line, "group or monoid")),
        }
    }

    pub fn hom(&self, name: &str, line: usize) -> Parsed<MonoidHom> {
        match self.lookup(name, line)? {
            Object::Hom(h) => Ok(h),
            _ => Err(wrong_kind(name, line, "hom")),
        }
    }

    pub fn problem(&self, name: &str, line: usize) -> Parsed<Problem> {
        match self.lookup(name, line)? {
            Object::Problem(p) => Ok(p),
            _ => Err(wrong_kind(name, line, "problem")),
        }
    }

    fn lookup(&self, name: &str, line: usize) -> Parsed<Object> {
        self.get(name)
            .ok_or_else(|| DefinitionError::UnknownObject {
                line,
                name: name.to_string(),
            })
    }

    fn declaration(&self, cur: &mut Cursor, cap: usize) -> Parsed<(String, Object)> {
        let keyword = cur.word("a declaration keyword")?;
        let name = cur.word("a name")?;
        let line = cur.line;
        let object = match keyword.as_str() {
            "group" => {
                let form = cur.word("perm or table")?;
                let k = cur.number("a degree or order")?;
                cur.expect(':')?;
                match form.as_str() {
                    "perm" => Object::Structure(permutation_group(cur, k)?),
                    "table" => Object::Structure(table_group(cur, k)?),
                    _ => {
                        return Err(
                            cur.error_at(cur.last, format!("expected perm or table, found {form}"))
                        )
                    }
                }
            }
            "monoid" => {
                let form = cur.word("transf or rowmono")?;
                let k = cur.number("a degree")?;
                match form.as_str() {
                    "transf" => {
                        cur.expect(':')?;
                        Object::Structure(transformation_monoid(cur, k, cap)?)
                    }
                    "rowmono" => {
                        cur.keyword("over")?;
                        let over_name = cur.word("an entry group or monoid")?;
                        cur.expect(':')?;
                        let over = self.structure(&over_name, line)?;
                        Object::Structure(row_monomial_monoid(cur, k, &over, cap)?)
                    }
                    _ => {
                        return Err(cur.error_at(
                            cur.last,
                            format!("expected transf or rowmono, found {form}"),
                        ))
                    }
                }
            }
            "hom" => {
                cur.keyword("from")?;
                let source = cur.word("a source name")?;
                cur.keyword("to")?;
                let target = cur.word("a target name")?;
                cur.expect(':')?;
                let source = self.structure(&source, line)?;
                let target = self.structure(&target, line)?;
                let labels = cur.list(|c| c.number("an image label"))?;
                let images = labels
                    .iter()
                    .map(|&(col, l)| resolve_label(&target, l, line, col))
                    .collect::<Parsed<Vec<usize>>>()?;
                let hom = hom_from_images(&source.monoid, &target.monoid, &images)
                    .map_err(|source| DefinitionError::Invalid { line, source })?;
                Object::Hom(hom)
            }
            "problem" => {
                cur.expect(':')?;
                cur.keyword("base")?;
                let base = cur.word("a base monoid name")?;
                cur.keyword("alpha")?;
                let alpha = cur.word("a hom name")?;
                self.structure(&base, line)?;
                self.hom(&alpha, line)?;
                Object::Problem(Problem { base, alpha })
            }
            _ => return Err(cur.error_at(0, format!("unknown declaration {keyword}"))),
        };
        cur.end()?;
        Ok((name, object))
    }
}

fn wrong_kind(name: &str, line: usize, expected: &'static str) -> DefinitionError {
    DefinitionError::WrongKind {
        line,
        name: name.to_string(),
        expected,
    }
}

fn resolve_label(s: &Structure, label: usize, line: usize, column: usize) -> Parsed<usize> {
    if label == 0 || label > s.labels.len() {
        return Err(DefinitionError::Parse {
            line,
            column,
            message: format!("label {label} outside 1..={}", s.labels.len()),
        });
    }
    Ok(s.labels[label - 1])
}

fn permutation_group(cur: &mut Cursor, degree: usize) -> Parsed<Structure> {
    let line = cur.line;
    let gens = cur.list(|c| {
        let mut cycles = Vec::new();
        c.expect('(')?;
        loop {
            let mut cycle = Vec::new();
            while !c.eat(')') {
                let at = c.pos;
                let p = c.number("a point")?;
                if p == 0 || p > degree {
                    return Err(c.error_at(at, format!("point {p} outside 1..={degree}")));
                }
                cycle.push(p as u32 - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            if !c.eat('(') {
                break;
            }
        }
        let at = c.pos;
        Transformation::from_cycles(degree, &cycles).map_err(|e| c.error_at(at, e.to_string()))
    })?;
    let gens: Vec<Transformation> = gens.into_iter().map(|(_, g)| g).collect();
    let g = FiniteGroup::from_permutations(degree, &gens)
        .map_err(|source| DefinitionError::Invalid { line, source })?;
    Ok(Structure::enumerated(g.monoid().clone(), true))
}

fn table_group(cur: &mut Cursor, order: usize) -> Parsed<Structure> {
    let line = cur.line;
    let mut table = Vec::with_capacity(order * order);
    for r in 0..order {
        if r > 0 {
            cur.expect(';')?;
        }
        for _ in 0..order {
            let at = cur.pos;
            let l = cur.number("a table entry")?;
            if l == 0 || l > order {
                return Err(cur.error_at(at, format!("label {l} outside 1..={order}")));
            }
            table.push(l as u32 - 1);
        }
    }
    let g = FiniteGroup::from_table(order, table)
        .map_err(|source| DefinitionError::Invalid { line, source })?;
    let labels = (0..order as u32)
        .map(|l| {
            g.monoid()
                .index_of(&Element::Index(l))
                .expect("table label")
        })
        .collect();
    Ok(Structure {
        monoid: g.monoid().clone(),
        labels,
        is_group: true,
    })
}

fn transformation_monoid(cur: &mut Cursor, degree: usize, cap: usize) -> Parsed<Structure> {
    let line = cur.line;
    let gens = cur.list(|c| {
        c.expect('[')?;
        let mut images = Vec::with_capacity(degree);
        while !c.eat(']') {
            let at = c.pos;
            let p = c.number("an image point")?;
            if p == 0 || p > degree {
                return Err(c.error_at(at, format!("point {p} outside 1..={degree}")));
            }
            images.push(p as u32 - 1);
        }
        if images.len() != degree {
            return Err(c.error_at(
                c.pos - 1,
                format!("{} images for degree {degree}", images.len()),
            ));
        }
        Ok(Transformation::new(images).expect("images in range"))
    })?;
    let gens: Vec<Transformation> = gens.into_iter().map(|(_, g)| g).collect();
    let m = FiniteMonoid::transformations(degree, &gens, cap)
        .map_err(|source| DefinitionError::Invalid { line, source })?;
    Ok(Structure::enumerated(Arc::new(m), false))
}

fn row_monomial_monoid(
    cur: &mut Cursor,
    size: usize,
    over: &Structure,
    cap: usize,
) -> Parsed<Structure> {
    let line = cur.line;
    let gens = cur.list(|c| {
        c.expect('[')?;
        let mut cols = Vec::with_capacity(size);
        let mut entries = Vec::with_capacity(size);
        while !c.eat(']') {
            let at = c.pos;
            let col = c.number("a column")?;
            if col == 0 || col > size {
                return Err(c.error_at(at, format!("column {col} outside 1..={size}")));
            }
            c.expect(':')?;
            let at = c.pos;
            let l = c.number("an entry label")?;
            cols.push(col as u32 - 1);
            entries.push(resolve_label(over, l, line, at + 1)? as u32);
        }
        if cols.len() != size {
            return Err(c.error_at(c.pos - 1, format!("{} rows for size {size}", cols.len())));
        }
        Ok(RowMonomialMatrix::new(cols, entries).expect("columns in range"))
    })?;
    let seeds: Vec<Element> = gens.into_iter().map(|(_, g)| Element::RowMono(g)).collect();
    let identity = Element::RowMono(RowMonomialMatrix::identity(
        size,
        over.monoid.identity() as u32,
    ));
    let rule = RowMonoRule {
        entry: &over.monoid,
    };
    let m = generate_monoid(&seeds, identity, &rule, cap)
        .map_err(|source| DefinitionError::Invalid { line, source })?;
    Ok(Structure::enumerated(Arc::new(m), false))
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    last: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
            last: 0,
            line,
        }
    }

    fn error_at(&self, pos: usize, message: String) -> DefinitionError {
        DefinitionError::Parse {
            line: self.line,
            column: pos + 1,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of line".into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Parsed<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.describe();
            Err(self.error_at(self.pos, format!("expected '{c}', found {found}")))
        }
    }

    fn word(&mut self, what: &str) -> Parsed<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.describe();
            return Err(self.error_at(start, format!("expected {what}, found {found}")));
        }
        self.last = start;
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn keyword(&mut self, keyword: &str) -> Parsed<()> {
        let start = self.pos;
        match self.word(keyword) {
            Ok(w) if w == keyword => Ok(()),
            Ok(w) => Err(self.error_at(self.last, format!("expected {keyword}, found {w}"))),
            Err(_) => {
                self.pos = start;
                let found = self.describe();
                Err(self.error_at(self.pos, format!("expected {keyword}, found {found}")))
            }
        }
    }

    fn number(&mut self, what: &str) -> Parsed<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.describe();
            return Err(self.error_at(start, format!("expected {what}, found {found}")));
        }
        self.last = start;
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| self.error_at(start, format!("{digits} is too large")))
    }

    /// Comma-separated items, each with the column where it starts.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Parsed<T>) -> Parsed<Vec<(usize, T)>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let column = self.pos + 1;
            out.push((column, item(self)?));
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }

    fn end(&mut self) -> Parsed<()> {
        if self.peek().is_none() {
            Ok(())
        } else {
            let found = self.describe();
            Err(self.error_at(self.pos, format!("expected end of line, found {found}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use semikernel::{identify, DEFAULT_CAP};

    fn parse(text: &str) -> Parsed<Definitions> {
        Definitions::parse(text, DEFAULT_CAP)
    }

    #[test]
    fn permutation_and_table_groups() {
        let defs = parse(
            "# comment\n\
             group S perm 3: (1 2 3), (1 2)\n\
             group K table 2: 1 2; 2 1   # trailing\n",
        )
        .unwrap();
        assert_eq!(defs.names, ["S", "K"]);
        let s = defs.structure("S", 0).unwrap();
        assert_eq!(identify(&s.group().unwrap()), Some("S3"));
        assert_eq!(s.monoid.num_generators(), 2);
        let k = defs.structure("K", 0).unwrap();
        assert_eq!(identify(&k.group().unwrap()), Some("C2"));
        assert_eq!(k.labels[0], 0);
    }

    #[test]
    fn identity_permutation_and_products_of_cycles() {
        let defs = parse("group G perm 4: (1 2)(3 4), ()").unwrap();
        assert_eq!(defs.structure("G", 0).unwrap().monoid.len(), 2);
    }

    #[test]
    fn table_labels_need_not_put_identity_first() {
        let defs = parse("group G table 2: 2 1; 1 2").unwrap();
        let g = defs.structure("G", 0).unwrap();
        assert_eq!(g.labels[1], g.monoid.identity());
        assert_eq!(g.label_of(g.monoid.identity()), 2);
    }

    #[test]
    fn transformation_and_row_monomial_monoids() {
        let defs = parse(
            "monoid Z transf 2: [1 2], [1 1]\n\
             monoid R rowmono 2 over C2: [2:1 1:1], [1:2 1:1]\n",
        )
        .unwrap();
        let z = defs.structure("Z", 0).unwrap();
        assert_eq!(z.monoid.len(), 2);
        assert_eq!(z.monoid.num_generators(), 2);
        assert!(!z.is_group);
        let r = defs.structure("R", 0).unwrap();
        assert!(r.monoid.len() > 2);
    }

    #[test]
    fn homs_and_problems() {
        let defs = parse(
            "monoid B transf 2: [2 1], [2 1]\n\
             hom a from C4 to C2: 2\n\
             problem P: base B alpha a\n",
        )
        .unwrap();
        let a = defs.hom("a", 0).unwrap();
        assert!(a.is_surjective());
        assert_eq!(a.kernel().len(), 2);
        let p = defs.problem("P", 0).unwrap();
        assert_eq!((p.base.as_str(), p.alpha.as_str()), ("B", "a"));
    }

    #[test]
    fn library_names_resolve_and_can_be_shadowed() {
        let defs = parse("group C2 perm 3: (1 2 3)").unwrap();
        assert_eq!(defs.structure("C2", 0).unwrap().monoid.len(), 3);
        assert_eq!(defs.structure("S3", 0).unwrap().monoid.len(), 6);
    }

    fn parse_error(text: &str) -> (usize, usize) {
        match parse(text) {
            Err(DefinitionError::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(parse_error("\ngroup G perm 3: (1 4)"), (2, 20));
        assert_eq!(parse_error("group G perm 3 (1 2)"), (1, 16));
        assert_eq!(parse_error("group G table 2: 1 2; 2"), (1, 24));
        assert_eq!(parse_error("monoid M transf 2: [1]"), (1, 22));
        assert_eq!(parse_error("widget W: 1"), (1, 1));
        assert_eq!(parse_error("group G perm 2: (1 2) extra"), (1, 23));
        assert_eq!(parse_error("hom a from C4 to C2: 3"), (1, 22));
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(
            parse("hom a from C4 to Nope: 1"),
            Err(DefinitionError::UnknownObject { line: 1, .. })
        ));
        assert!(matches!(
            parse("group G table 2: 1 2; 2 2"),
            Err(DefinitionError::Invalid { .. })
        ));
        assert!(matches!(
            parse("group G perm 2: (1 2)\ngroup G perm 2: ()"),
            Err(DefinitionError::Duplicate { line: 2, .. })
        ));
        // C3 has no element of order two to receive the generator of C2
        assert!(matches!(
            parse("hom a from C2 to C3: 2"),
            Err(DefinitionError::Invalid { .. })
        ));
        assert!(matches!(
            parse("hom a from C2 to C2: 2\nproblem P: base a alpha a"),
            Err(DefinitionError::WrongKind { line: 2, .. })
        ));
        assert!(parse("monoid M transf 3: [2 3 1]").is_ok());
    }

    #[test]
    fn cap_is_enforced() {
        let err = Definitions::parse("monoid M transf 4: [2 3 4 1], [2 1 3 4], [1 1 3 4]", 10)
            .unwrap_err();
        assert!(matches!(
            err.library_error(),
            Some(semikernel::Error::CapExceeded { .. })
        ));
    }
}
