//! Model documents: syntax tree, parser and canonical printer.
//!
//! ```text
//! galois R = cyclic(2)
//! base X = (cyclic(2) -> R via [0, 1])
//! group mu4 = cyclic(4) over R with action { 1: [0, 3, 2, 1] }
//! torsor P4 over (X, mu4) { size 4; left { 1: (0 3)(1 2) }; right { 1: (0 1 2 3) }; point 3 }
//! morphism sq : P4 -> P2 via [0, 1, 0, 1]
//! ```

use std::fmt::{self, Write as _};

use thiserror::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: syntax error: {message}")]
pub struct SyntaxError {
    pub span: Span,
    pub message: String,
}

/// Automorphism images per generator: `{ gen: [images] }`.
pub type GeneratorMaps = Vec<(usize, Vec<usize>)>;

/// Permutation in disjoint cycle notation, kept as written.
pub type Cycles = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Units(usize),
    Product(Box<GroupExpr>, Box<GroupExpr>),
    /// Normal part, complement, images of the normal part's elements per complement generator.
    Semidirect(Box<GroupExpr>, Box<GroupExpr>, GeneratorMaps),
    Table(Vec<Vec<usize>>),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Galois {
        group: GroupExpr,
    },
    Base {
        pi: GroupExpr,
        context: String,
        images: Vec<usize>,
    },
    Group {
        expr: GroupExpr,
        over: Option<String>,
        action: Option<GeneratorMaps>,
    },
    Torsor {
        base: String,
        group: String,
        size: usize,
        left: Vec<(usize, Cycles)>,
        right: Vec<(usize, Cycles)>,
        point: usize,
    },
    Morphism {
        source: String,
        target: String,
        images: Vec<usize>,
    },
}

impl DeclKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            DeclKind::Galois { .. } => "galois",
            DeclKind::Base { .. } => "base",
            DeclKind::Group { .. } => "group",
            DeclKind::Torsor { .. } => "torsor",
            DeclKind::Morphism { .. } => "morphism",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub kind: DeclKind,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub decls: Vec<Decl>,
}

impl Document {
    /// Same document with every span zeroed, for comparisons.
    pub fn without_spans(&self) -> Document {
        Document { decls: self.decls.iter().map(|d| Decl { span: Span::default(), ..d.clone() }).collect() }
    }
}

pub const KEYWORDS: [&str; 18] = [
    "galois",
    "base",
    "group",
    "torsor",
    "morphism",
    "over",
    "with",
    "action",
    "via",
    "size",
    "left",
    "right",
    "point",
    "cyclic",
    "units",
    "product",
    "semidirect",
    "table",
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, SyntaxError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| SyntaxError { span, message: format!("integer {s} too large") })?;
            col += i - start;
            out.push((Tok::Int(n), span));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), span));
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Punct("->"), span));
            i += 2;
            col += 2;
            continue;
        }
        let p = match c {
            '(' => "(",
            ')' => ")",
            '[' => "[",
            ']' => "]",
            '{' => "{",
            '}' => "}",
            ',' => ",",
            ';' => ";",
            ':' => ":",
            '=' => "=",
            _ => return Err(SyntaxError { span, message: format!("unexpected character {c:?}") }),
        };
        out.push((Tok::Punct(p), span));
        i += 1;
        col += 1;
    }
    out.push((Tok::Eof, Span { line, column: col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { span: self.span(), message: message.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, p: &str) -> bool {
        if matches!(self.peek(), Tok::Punct(q) if *q == p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> Result<(), SyntaxError> {
        if self.eat(p) {
            Ok(())
        } else {
            self.error(format!("expected `{p}`, found {}", self.peek()))
        }
    }

    fn keyword(&mut self, k: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Tok::Ident(s) if s == k => {
                self.bump();
                Ok(())
            }
            t => self.error(format!("expected `{k}`, found {t}")),
        }
    }

    fn at_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == k)
    }

    fn name(&mut self) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            Tok::Ident(s) => self.error(format!("`{s}` is a keyword, not a name")),
            t => self.error(format!("expected a name, found {t}")),
        }
    }

    fn int(&mut self) -> Result<usize, SyntaxError> {
        match self.peek() {
            &Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            t => self.error(format!("expected an integer, found {t}")),
        }
    }

    fn int_list(&mut self) -> Result<Vec<usize>, SyntaxError> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    /// `{ key: item; key: item }`, separators `;` or `,`, trailing allowed.
    fn keyed<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, SyntaxError>,
    ) -> Result<Vec<(usize, T)>, SyntaxError> {
        self.expect("{")?;
        let mut out = Vec::new();
        loop {
            if self.eat("}") {
                return Ok(out);
            }
            let k = self.int()?;
            self.expect(":")?;
            out.push((k, item(self)?));
            if !self.eat(";") && !self.eat(",") {
                self.expect("}")?;
                return Ok(out);
            }
        }
    }

    fn cycles(&mut self) -> Result<Cycles, SyntaxError> {
        if !matches!(self.peek(), Tok::Punct("(")) {
            return self.error(format!("expected a permutation in cycle notation, found {}", self.peek()));
        }
        let mut out = Vec::new();
        while self.eat("(") {
            let mut cycle = Vec::new();
            while !self.eat(")") {
                cycle.push(self.int()?);
                self.eat(",");
            }
            if !cycle.is_empty() {
                out.push(cycle);
            }
        }
        Ok(out)
    }

    fn group_expr(&mut self) -> Result<GroupExpr, SyntaxError> {
        let Tok::Ident(head) = self.peek().clone() else {
            return self.error(format!("expected a group expression, found {}", self.peek()));
        };
        match head.as_str() {
            "cyclic" | "units" => {
                self.bump();
                self.expect("(")?;
                let n = self.int()?;
                self.expect(")")?;
                Ok(if head == "cyclic" { GroupExpr::Cyclic(n) } else { GroupExpr::Units(n) })
            }
            "product" => {
                self.bump();
                self.expect("(")?;
                let a = self.group_expr()?;
                self.expect(",")?;
                let b = self.group_expr()?;
                self.expect(")")?;
                Ok(GroupExpr::Product(Box::new(a), Box::new(b)))
            }
            "semidirect" => {
                self.bump();
                self.expect("(")?;
                let n = self.group_expr()?;
                self.expect(",")?;
                let h = self.group_expr()?;
                self.expect(",")?;
                let maps = self.keyed(Self::int_list)?;
                self.expect(")")?;
                Ok(GroupExpr::Semidirect(Box::new(n), Box::new(h), maps))
            }
            "table" => {
                self.bump();
                self.expect("(")?;
                self.expect("[")?;
                let mut rows = Vec::new();
                if !self.eat("]") {
                    loop {
                        rows.push(self.int_list()?);
                        if self.eat("]") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                self.expect(")")?;
                Ok(GroupExpr::Table(rows))
            }
            _ => Ok(GroupExpr::Name(self.name()?)),
        }
    }

    fn decl(&mut self) -> Result<Decl, SyntaxError> {
        let span = self.span();
        let Tok::Ident(kw) = self.peek().clone() else {
            return self.error(format!("expected a declaration, found {}", self.peek()));
        };
        self.bump();
        let name = self.name()?;
        let kind = match kw.as_str() {
            "galois" => {
                self.expect("=")?;
                DeclKind::Galois { group: self.group_expr()? }
            }
            "base" => {
                self.expect("=")?;
                self.expect("(")?;
                let pi = self.group_expr()?;
                self.expect("->")?;
                let context = self.name()?;
                self.keyword("via")?;
                let images = self.int_list()?;
                self.expect(")")?;
                DeclKind::Base { pi, context, images }
            }
            "group" => {
                self.expect("=")?;
                let expr = self.group_expr()?;
                let over = if self.at_keyword("over") {
                    self.bump();
                    Some(self.name()?)
                } else {
                    None
                };
                let action = if self.at_keyword("with") {
                    self.bump();
                    self.keyword("action")?;
                    Some(self.keyed(Self::int_list)?)
                } else {
                    None
                };
                DeclKind::Group { expr, over, action }
            }
            "torsor" => {
                self.keyword("over")?;
                self.expect("(")?;
                let base = self.name()?;
                self.expect(",")?;
                let group = self.name()?;
                self.expect(")")?;
                self.expect("{")?;
                self.keyword("size")?;
                let size = self.int()?;
                self.expect(";")?;
                self.keyword("left")?;
                let left = self.keyed(Self::cycles)?;
                self.expect(";")?;
                self.keyword("right")?;
                let right = self.keyed(Self::cycles)?;
                self.expect(";")?;
                self.keyword("point")?;
                let point = self.int()?;
                self.eat(";");
                self.expect("}")?;
                DeclKind::Torsor { base, group, size, left, right, point }
            }
            "morphism" => {
                self.expect(":")?;
                let source = self.name()?;
                self.expect("->")?;
                let target = self.name()?;
                self.keyword("via")?;
                DeclKind::Morphism { source, target, images: self.int_list()? }
            }
            other => {
                return Err(SyntaxError {
                    span,
                    message: format!("unknown declaration `{other}`; expected galois, base, group, torsor or morphism"),
                })
            }
        };
        Ok(Decl { name, kind, span })
    }
}

pub fn parse_document(text: &str) -> Result<Document, SyntaxError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut decls = Vec::new();
    while *p.peek() != Tok::Eof {
        decls.push(p.decl()?);
    }
    Ok(Document { decls })
}

fn join<T>(items: &[T], sep: &str, f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(sep)
}

fn ints(v: &[usize]) -> String {
    format!("[{}]", join(v, ", ", |x| x.to_string()))
}

fn maps(m: &GeneratorMaps) -> String {
    if m.is_empty() {
        "{}".into()
    } else {
        format!("{{ {} }}", join(m, "; ", |(k, v)| format!("{k}: {}", ints(v))))
    }
}

pub fn print_cycles(c: &Cycles) -> String {
    if c.is_empty() {
        "()".into()
    } else {
        join(c, "", |cy| format!("({})", join(cy, " ", |x| x.to_string())))
    }
}

fn perms(m: &[(usize, Cycles)]) -> String {
    if m.is_empty() {
        "{}".into()
    } else {
        format!("{{ {} }}", join(m, "; ", |(k, c)| format!("{k}: {}", print_cycles(c))))
    }
}

pub fn print_group_expr(e: &GroupExpr) -> String {
    match e {
        GroupExpr::Cyclic(n) => format!("cyclic({n})"),
        GroupExpr::Units(n) => format!("units({n})"),
        GroupExpr::Product(a, b) => format!("product({}, {})", print_group_expr(a), print_group_expr(b)),
        GroupExpr::Semidirect(n, h, m) => {
            format!("semidirect({}, {}, {})", print_group_expr(n), print_group_expr(h), maps(m))
        }
        GroupExpr::Table(rows) => format!("table([{}])", join(rows, ", ", |r| ints(r))),
        GroupExpr::Name(s) => s.clone(),
    }
}

/// Canonical text: one declaration per line, single spaces.
pub fn print_document(doc: &Document) -> String {
    let mut out = String::new();
    for d in &doc.decls {
        let n = &d.name;
        match &d.kind {
            DeclKind::Galois { group } => writeln!(out, "galois {n} = {}", print_group_expr(group)),
            DeclKind::Base { pi, context, images } => {
                writeln!(out, "base {n} = ({} -> {context} via {})", print_group_expr(pi), ints(images))
            }
            DeclKind::Group { expr, over, action } => {
                write!(out, "group {n} = {}", print_group_expr(expr)).unwrap();
                if let Some(c) = over {
                    write!(out, " over {c}").unwrap();
                }
                if let Some(m) = action {
                    write!(out, " with action {}", maps(m)).unwrap();
                }
                writeln!(out)
            }
            DeclKind::Torsor { base, group, size, left, right, point } => writeln!(
                out,
                "torsor {n} over ({base}, {group}) {{ size {size}; left {}; right {}; point {point} }}",
                perms(left),
                perms(right)
            ),
            DeclKind::Morphism { source, target, images } => {
                writeln!(out, "morphism {n} : {source} -> {target} via {}", ints(images))
            }
        }
        .unwrap();
    }
    out
}
