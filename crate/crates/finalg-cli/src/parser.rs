//! Definition-file parsing: a flat UTF-8 format with `#` comments and
//! semicolon-or-newline separators. Blocks declare structures, maps, fuzzy
//! overlays and multi structures; all values are expanded and resolved after
//! the full file is parsed.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Rational(i64, i64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Newline,
    Equals,
    Plus,
    Arrow,
    Star,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.col, message: message.into() }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            let (line, col) = (self.line, self.col);
            match c {
                b' ' | b'\t' | b'\r' => {
                    self.bump();
                }
                b'\n' => {
                    self.bump();
                    out.push((Tok::Newline, line, col));
                }
                b'#' => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                b'{' => {
                    self.bump();
                    out.push((Tok::LBrace, line, col));
                }
                b'}' => {
                    self.bump();
                    out.push((Tok::RBrace, line, col));
                }
                b'(' => {
                    self.bump();
                    out.push((Tok::LParen, line, col));
                }
                b')' => {
                    self.bump();
                    out.push((Tok::RParen, line, col));
                }
                b'[' => {
                    self.bump();
                    out.push((Tok::LBracket, line, col));
                }
                b']' => {
                    self.bump();
                    out.push((Tok::RBracket, line, col));
                }
                b',' => {
                    self.bump();
                    out.push((Tok::Comma, line, col));
                }
                b';' => {
                    self.bump();
                    out.push((Tok::Semi, line, col));
                }
                b'=' => {
                    self.bump();
                    out.push((Tok::Equals, line, col));
                }
                b'+' => {
                    self.bump();
                    out.push((Tok::Plus, line, col));
                }
                b'*' => {
                    self.bump();
                    out.push((Tok::Star, line, col));
                }
                b'-' => {
                    self.bump();
                    if self.peek() == Some(b'>') {
                        self.bump();
                        out.push((Tok::Arrow, line, col));
                    } else {
                        return Err(self.error("expected '->'"));
                    }
                }
                b'0'..=b'9' => {
                    let mut value: u64 = 0;
                    while let Some(d @ b'0'..=b'9') = self.peek() {
                        self.bump();
                        value = value
                            .checked_mul(10)
                            .and_then(|v| v.checked_add((d - b'0') as u64))
                            .ok_or_else(|| self.error("integer literal too large"))?;
                    }
                    if self.peek() == Some(b'/') {
                        self.bump();
                        let mut denom: u64 = 0;
                        let mut any = false;
                        while let Some(d @ b'0'..=b'9') = self.peek() {
                            self.bump();
                            any = true;
                            denom = denom
                                .checked_mul(10)
                                .and_then(|v| v.checked_add((d - b'0') as u64))
                                .ok_or_else(|| self.error("integer literal too large"))?;
                        }
                        if !any || denom == 0 {
                            return Err(self.error("rational needs a nonzero denominator"));
                        }
                        out.push((Tok::Rational(value as i64, denom as i64), line, col));
                    } else {
                        out.push((Tok::Int(value), line, col));
                    }
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut word = String::new();
                    while let Some(c) = self.peek() {
                        if c.is_ascii_alphanumeric() || c == b'_' {
                            word.push(c as char);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    out.push((Tok::Ident(word), line, col));
                }
                other => {
                    return Err(self.error(format!("unexpected character '{}'", other as char)))
                }
            }
        }
        Ok(out)
    }
}

/// Untyped element literal; shapes resolve against the containing carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Int(u64),
    Tuple(Vec<u64>),
    Matrix(Vec<Vec<u64>>),
    Poly(Vec<u64>),
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(v) => write!(f, "{v}"),
            Literal::Tuple(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Literal::Matrix(rows) => {
                let parts: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                write!(f, "[{}]", parts.join(","))
            }
            Literal::Poly(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "poly({})", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CarrierExpr {
    Zn(u64),
    ZnTuple(u64, usize),
    ZnMatrix(u64, usize, usize),
    ZnPoly(u64, usize),
    NatWindow(u64),
    ExplicitMod(u64, Vec<Literal>),
    ExplicitNat(Vec<Literal>),
}

impl fmt::Display for CarrierExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarrierExpr::Zn(n) => write!(f, "zn({n})"),
            CarrierExpr::ZnTuple(n, k) => write!(f, "zn_tuple({n},{k})"),
            CarrierExpr::ZnMatrix(n, r, c) => write!(f, "zn_matrix({n},{r},{c})"),
            CarrierExpr::ZnPoly(n, d) => write!(f, "zn_poly({n},{d})"),
            CarrierExpr::NatWindow(b) => write!(f, "nat_window({b})"),
            CarrierExpr::ExplicitMod(n, lits) => {
                let parts: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
                write!(f, "explicit mod({n}) {{ {} }}", parts.join(", "))
            }
            CarrierExpr::ExplicitNat(lits) => {
                let parts: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
                write!(f, "explicit nat {{ {} }}", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    All,
    List(Vec<Literal>),
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::All => write!(f, "all"),
            SetExpr::List(lits) => {
                let parts: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
                write!(f, "{{ {} }}", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarsExpr {
    /// Whole carrier as the member set.
    Carrier(CarrierExpr),
    /// Explicit subset of a base carrier.
    SubsetOf(Vec<Literal>, CarrierExpr),
    /// Cayley addition table over bare scalar symbols.
    Table(Vec<(u64, u64, u64)>),
}

impl fmt::Display for ScalarsExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarsExpr::Carrier(c) => write!(f, "{c}"),
            ScalarsExpr::SubsetOf(lits, c) => {
                let parts: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
                write!(f, "{{ {} }} of {c}", parts.join(", "))
            }
            ScalarsExpr::Table(entries) => {
                let parts: Vec<String> =
                    entries.iter().map(|(a, b, c)| format!("{a}+{b}={c}")).collect();
                write!(f, "table {{ {} }}", parts.join("; "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionExpr {
    ModMul,
    NatMul,
    Table(Vec<(Literal, Literal, Literal)>),
}

impl fmt::Display for ActionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionExpr::ModMul => write!(f, "mod_mul"),
            ActionExpr::NatMul => write!(f, "nat_mul"),
            ActionExpr::Table(entries) => {
                let parts: Vec<String> = entries
                    .iter()
                    .map(|(g, v, w)| format!("{g} * {v} -> {w}"))
                    .collect();
                write!(f, "table {{ {} }}", parts.join("; "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureBlock {
    pub name: String,
    pub family: String,
    pub carrier: CarrierExpr,
    pub ground: SetExpr,
    pub scalars: ScalarsExpr,
    pub action: Option<ActionExpr>,
    pub zero: Option<Literal>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapRuleExpr {
    /// 1-based coordinate positions in definition files.
    Permute(Vec<usize>),
    Scale(u64),
    Project(Vec<usize>),
    Table(Vec<(Literal, Literal)>),
}

impl fmt::Display for MapRuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapRuleExpr::Permute(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "permute({})", parts.join(","))
            }
            MapRuleExpr::Scale(c) => write!(f, "scale({c})"),
            MapRuleExpr::Project(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "project({})", parts.join(","))
            }
            MapRuleExpr::Table(entries) => {
                let parts: Vec<String> =
                    entries.iter().map(|(v, w)| format!("{v} -> {w}")).collect();
                write!(f, "table {{ {} }}", parts.join("; "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapBlock {
    pub name: String,
    pub source: String,
    pub target: String,
    pub rule: MapRuleExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuzzyRuleExpr {
    CoordSumOver { divisor: u64, mod_first: Option<u64> },
    ReciprocalSum { at_zero: (i64, i64) },
    ReciprocalDegree { at_constant: (i64, i64) },
    OneMinusReciprocal,
    Table(Vec<(Literal, (i64, i64))>),
}

impl fmt::Display for FuzzyRuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rat = |(n, d): (i64, i64)| {
            if d == 1 {
                format!("{n}")
            } else {
                format!("{n}/{d}")
            }
        };
        match self {
            FuzzyRuleExpr::CoordSumOver { divisor, mod_first: None } => {
                write!(f, "coord_sum_over({divisor})")
            }
            FuzzyRuleExpr::CoordSumOver { divisor, mod_first: Some(n) } => {
                write!(f, "coord_sum_over({divisor}) mod {n}")
            }
            FuzzyRuleExpr::ReciprocalSum { at_zero } => {
                write!(f, "reciprocal_sum({})", rat(*at_zero))
            }
            FuzzyRuleExpr::ReciprocalDegree { at_constant } => {
                write!(f, "reciprocal_degree({})", rat(*at_constant))
            }
            FuzzyRuleExpr::OneMinusReciprocal => write!(f, "one_minus_reciprocal"),
            FuzzyRuleExpr::Table(entries) => {
                let parts: Vec<String> =
                    entries.iter().map(|(v, r)| format!("{v} -> {}", rat(*r))).collect();
                write!(f, "table {{ {} }}", parts.join("; "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyBlock {
    pub name: String,
    pub structure: String,
    pub rule: FuzzyRuleExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiBlock {
    pub name: String,
    pub components: Vec<String>,
    pub scalar_mode: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Structure(StructureBlock),
    Map(MapBlock),
    Fuzzy(FuzzyBlock),
    Multi(MultiBlock),
}

impl Block {
    pub fn name(&self) -> &str {
        match self {
            Block::Structure(b) => &b.name,
            Block::Map(b) => &b.name,
            Block::Fuzzy(b) => &b.name,
            Block::Multi(b) => &b.name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DefinitionFile {
    pub blocks: Vec<Block>,
}

impl fmt::Display for DefinitionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            match block {
                Block::Structure(b) => {
                    writeln!(f, "structure {} {{", b.name)?;
                    writeln!(f, "  family = {};", b.family)?;
                    writeln!(f, "  carrier = {};", b.carrier)?;
                    writeln!(f, "  ground = {};", b.ground)?;
                    writeln!(f, "  scalars = {};", b.scalars)?;
                    if let Some(a) = &b.action {
                        writeln!(f, "  action = {a};")?;
                    }
                    if let Some(z) = &b.zero {
                        writeln!(f, "  zero = {z};")?;
                    }
                    writeln!(f, "}}")?;
                }
                Block::Map(b) => {
                    writeln!(f, "map {} {{", b.name)?;
                    writeln!(f, "  source = {};", b.source)?;
                    writeln!(f, "  target = {};", b.target)?;
                    writeln!(f, "  rule = {};", b.rule)?;
                    writeln!(f, "}}")?;
                }
                Block::Fuzzy(b) => {
                    writeln!(f, "fuzzy {} {{", b.name)?;
                    writeln!(f, "  structure = {};", b.structure)?;
                    writeln!(f, "  rule = {};", b.rule)?;
                    writeln!(f, "}}")?;
                }
                Block::Multi(b) => {
                    writeln!(f, "multi {} {{", b.name)?;
                    writeln!(f, "  components = {};", b.components.join(", "))?;
                    writeln!(f, "  scalar_mode = {};", b.scalar_mode)?;
                    writeln!(f, "}}")?;
                }
            }
        }
        Ok(())
    }
}

pub struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn error_at(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self
            .tokens
            .get(self.pos)
            .map(|(_, l, c)| (*l, *c))
            .or_else(|| self.tokens.last().map(|(_, l, c)| (*l, *c + 1)))
            .unwrap_or((1, 1));
        ParseError { line, column, message: message.into() }
    }

    fn skip_newlines(&mut self) {
        while matches!(self.tokens.get(self.pos), Some((Tok::Newline, _, _))) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn peek_skipping(&mut self) -> Option<&Tok> {
        self.skip_newlines();
        self.peek()
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn next_skipping(&mut self) -> Option<Tok> {
        self.skip_newlines();
        self.next()
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        self.skip_newlines();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            Some(t) => {
                self.pos -= 1;
                Err(self.error_at(format!("expected {tok:?}, found {t:?}")))
            }
            None => Err(self.error_at(format!("expected {tok:?}, found end of file"))),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_newlines();
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            Some(t) => {
                self.pos -= 1;
                Err(self.error_at(format!("expected identifier, found {t:?}")))
            }
            None => Err(self.error_at("expected identifier, found end of file")),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_newlines();
        match self.next() {
            Some(Tok::Int(v)) => Ok(v),
            Some(t) => {
                self.pos -= 1;
                Err(self.error_at(format!("expected integer, found {t:?}")))
            }
            None => Err(self.error_at("expected integer, found end of file")),
        }
    }

    fn rational(&mut self) -> Result<(i64, i64), ParseError> {
        self.skip_newlines();
        match self.next() {
            Some(Tok::Rational(n, d)) => Ok((n, d)),
            Some(Tok::Int(v)) => Ok((v as i64, 1)),
            Some(t) => {
                self.pos -= 1;
                Err(self.error_at(format!("expected rational, found {t:?}")))
            }
            None => Err(self.error_at("expected rational, found end of file")),
        }
    }

    /// Statement separator: semicolon or newline; '}' may follow directly.
    fn statement_end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Semi) => {
                self.next();
                Ok(())
            }
            Some(Tok::Newline) => {
                self.skip_newlines();
                Ok(())
            }
            Some(Tok::RBrace) => Ok(()),
            Some(t) => {
                let t = t.clone();
                Err(self.error_at(format!("expected ';' or newline, found {t:?}")))
            }
            None => Ok(()),
        }
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        self.skip_newlines();
        match self.next() {
            Some(Tok::Int(v)) => Ok(Literal::Int(v)),
            Some(Tok::LParen) => {
                let mut coords = Vec::new();
                loop {
                    coords.push(self.int()?);
                    match self.next_skipping() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RParen) => break,
                        _ => {
                            self.pos -= 1;
                            return Err(self.error_at("expected ',' or ')' in tuple"));
                        }
                    }
                }
                Ok(Literal::Tuple(coords))
            }
            Some(Tok::LBracket) => {
                let mut rows = Vec::new();
                loop {
                    self.expect(Tok::LBracket)?;
                    let mut row = Vec::new();
                    loop {
                        row.push(self.int()?);
                        match self.next_skipping() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RBracket) => break,
                            _ => {
                                self.pos -= 1;
                                return Err(self.error_at("expected ',' or ']' in matrix row"));
                            }
                        }
                    }
                    rows.push(row);
                    match self.next_skipping() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RBracket) => break,
                        _ => {
                            self.pos -= 1;
                            return Err(self.error_at("expected ',' or ']' after matrix row"));
                        }
                    }
                }
                Ok(Literal::Matrix(rows))
            }
            Some(Tok::Ident(word)) if word == "poly" => {
                self.expect(Tok::LParen)?;
                let mut coeffs = Vec::new();
                loop {
                    coeffs.push(self.int()?);
                    match self.next_skipping() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RParen) => break,
                        _ => {
                            self.pos -= 1;
                            return Err(self.error_at("expected ',' or ')' in poly"));
                        }
                    }
                }
                Ok(Literal::Poly(coeffs))
            }
            Some(t) => {
                self.pos -= 1;
                Err(self.error_at(format!("expected element literal, found {t:?}")))
            }
            None => Err(self.error_at("expected element literal, found end of file")),
        }
    }

    fn literal_list_braced(&mut self) -> Result<Vec<Literal>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if matches!(self.peek_skipping(), Some(Tok::RBrace)) {
            self.next();
            return Ok(out);
        }
        loop {
            out.push(self.literal()?);
            match self.next_skipping() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBrace) => break,
                _ => {
                    self.pos -= 1;
                    return Err(self.error_at("expected ',' or '}' in set"));
                }
            }
        }
        Ok(out)
    }

    fn carrier_expr(&mut self) -> Result<CarrierExpr, ParseError> {
        let word = self.ident()?;
        match word.as_str() {
            "zn" => {
                self.expect(Tok::LParen)?;
                let n = self.int()?;
                self.expect(Tok::RParen)?;
                Ok(CarrierExpr::Zn(n))
            }
            "zn_tuple" => {
                self.expect(Tok::LParen)?;
                let n = self.int()?;
                self.expect(Tok::Comma)?;
                let k = self.int()? as usize;
                self.expect(Tok::RParen)?;
                Ok(CarrierExpr::ZnTuple(n, k))
            }
            "zn_matrix" => {
                self.expect(Tok::LParen)?;
                let n = self.int()?;
                self.expect(Tok::Comma)?;
                let r = self.int()? as usize;
                self.expect(Tok::Comma)?;
                let c = self.int()? as usize;
                self.expect(Tok::RParen)?;
                Ok(CarrierExpr::ZnMatrix(n, r, c))
            }
            "zn_poly" => {
                self.expect(Tok::LParen)?;
                let n = self.int()?;
                self.expect(Tok::Comma)?;
                let d = self.int()? as usize;
                self.expect(Tok::RParen)?;
                Ok(CarrierExpr::ZnPoly(n, d))
            }
            "nat_window" => {
                self.expect(Tok::LParen)?;
                let b = self.int()?;
                self.expect(Tok::RParen)?;
                Ok(CarrierExpr::NatWindow(b))
            }
            "explicit" => {
                let kind = self.ident()?;
                match kind.as_str() {
                    "mod" => {
                        self.expect(Tok::LParen)?;
                        let n = self.int()?;
                        self.expect(Tok::RParen)?;
                        let lits = self.literal_list_braced()?;
                        Ok(CarrierExpr::ExplicitMod(n, lits))
                    }
                    "nat" => {
                        let lits = self.literal_list_braced()?;
                        Ok(CarrierExpr::ExplicitNat(lits))
                    }
                    other => Err(self.error_at(format!(
                        "expected 'mod' or 'nat' after explicit, found '{other}'"
                    ))),
                }
            }
            other => Err(self.error_at(format!("unknown carrier kind '{other}'"))),
        }
    }

    fn set_expr(&mut self) -> Result<SetExpr, ParseError> {
        match self.peek_skipping() {
            Some(Tok::Ident(w)) if w == "all" => {
                self.next();
                Ok(SetExpr::All)
            }
            Some(Tok::LBrace) => Ok(SetExpr::List(self.literal_list_braced()?)),
            _ => Err(self.error_at("expected 'all' or a braced set")),
        }
    }

    fn scalars_expr(&mut self) -> Result<ScalarsExpr, ParseError> {
        match self.peek_skipping() {
            Some(Tok::LBrace) => {
                let lits = self.literal_list_braced()?;
                let of = self.ident()?;
                if of != "of" {
                    return Err(self.error_at("expected 'of' after scalar subset"));
                }
                let carrier = self.carrier_expr()?;
                Ok(ScalarsExpr::SubsetOf(lits, carrier))
            }
            Some(Tok::Ident(w)) if w == "table" => {
                self.next();
                self.expect(Tok::LBrace)?;
                let mut entries = Vec::new();
                loop {
                    self.skip_newlines();
                    if matches!(self.peek(), Some(Tok::RBrace)) {
                        self.next();
                        break;
                    }
                    let a = self.int()?;
                    self.expect(Tok::Plus)?;
                    let b = self.int()?;
                    self.expect(Tok::Equals)?;
                    let c = self.int()?;
                    entries.push((a, b, c));
                    match self.peek_skipping() {
                        Some(Tok::Semi) => {
                            self.next();
                        }
                        Some(Tok::RBrace) => {}
                        _ => return Err(self.error_at("expected ';' or '}' in table")),
                    }
                }
                Ok(ScalarsExpr::Table(entries))
            }
            _ => Ok(ScalarsExpr::Carrier(self.carrier_expr()?)),
        }
    }

    fn action_expr(&mut self) -> Result<ActionExpr, ParseError> {
        let word = self.ident()?;
        match word.as_str() {
            "mod_mul" => Ok(ActionExpr::ModMul),
            "nat_mul" => Ok(ActionExpr::NatMul),
            "table" => {
                self.expect(Tok::LBrace)?;
                let mut entries = Vec::new();
                loop {
                    self.skip_newlines();
                    if matches!(self.peek(), Some(Tok::RBrace)) {
                        self.next();
                        break;
                    }
                    let g = self.literal()?;
                    self.expect(Tok::Star)?;
                    let v = self.literal()?;
                    self.expect(Tok::Arrow)?;
                    let w = self.literal()?;
                    entries.push((g, v, w));
                    match self.peek_skipping() {
                        Some(Tok::Semi) => {
                            self.next();
                        }
                        Some(Tok::RBrace) => {}
                        _ => return Err(self.error_at("expected ';' or '}' in action table")),
                    }
                }
                Ok(ActionExpr::Table(entries))
            }
            other => Err(self.error_at(format!("unknown action '{other}'"))),
        }
    }

    fn map_rule_expr(&mut self) -> Result<MapRuleExpr, ParseError> {
        let word = self.ident()?;
        match word.as_str() {
            "permute" | "project" => {
                self.expect(Tok::LParen)?;
                let mut positions = Vec::new();
                loop {
                    positions.push(self.int()? as usize);
                    match self.next_skipping() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RParen) => break,
                        _ => {
                            self.pos -= 1;
                            return Err(self.error_at("expected ',' or ')'"));
                        }
                    }
                }
                if word == "permute" {
                    Ok(MapRuleExpr::Permute(positions))
                } else {
                    Ok(MapRuleExpr::Project(positions))
                }
            }
            "scale" => {
                self.expect(Tok::LParen)?;
                let c = self.int()?;
                self.expect(Tok::RParen)?;
                Ok(MapRuleExpr::Scale(c))
            }
            "table" => {
                self.expect(Tok::LBrace)?;
                let mut entries = Vec::new();
                loop {
                    self.skip_newlines();
                    if matches!(self.peek(), Some(Tok::RBrace)) {
                        self.next();
                        break;
                    }
                    let v = self.literal()?;
                    self.expect(Tok::Arrow)?;
                    let w = self.literal()?;
                    entries.push((v, w));
                    match self.peek_skipping() {
                        Some(Tok::Semi) => {
                            self.next();
                        }
                        Some(Tok::RBrace) => {}
                        _ => return Err(self.error_at("expected ';' or '}' in map table")),
                    }
                }
                Ok(MapRuleExpr::Table(entries))
            }
            other => Err(self.error_at(format!("unknown map rule '{other}'"))),
        }
    }

    fn fuzzy_rule_expr(&mut self) -> Result<FuzzyRuleExpr, ParseError> {
        let word = self.ident()?;
        match word.as_str() {
            "coord_sum_over" => {
                self.expect(Tok::LParen)?;
                let divisor = self.int()?;
                self.expect(Tok::RParen)?;
                let mod_first = match self.peek() {
                    Some(Tok::Ident(w)) if w == "mod" => {
                        self.next();
                        Some(self.int()?)
                    }
                    _ => None,
                };
                Ok(FuzzyRuleExpr::CoordSumOver { divisor, mod_first })
            }
            "reciprocal_sum" => {
                self.expect(Tok::LParen)?;
                let at_zero = self.rational()?;
                self.expect(Tok::RParen)?;
                Ok(FuzzyRuleExpr::ReciprocalSum { at_zero })
            }
            "reciprocal_degree" => {
                self.expect(Tok::LParen)?;
                let at_constant = self.rational()?;
                self.expect(Tok::RParen)?;
                Ok(FuzzyRuleExpr::ReciprocalDegree { at_constant })
            }
            "one_minus_reciprocal" => Ok(FuzzyRuleExpr::OneMinusReciprocal),
            "table" => {
                self.expect(Tok::LBrace)?;
                let mut entries = Vec::new();
                loop {
                    self.skip_newlines();
                    if matches!(self.peek(), Some(Tok::RBrace)) {
                        self.next();
                        break;
                    }
                    let v = self.literal()?;
                    self.expect(Tok::Arrow)?;
                    let r = self.rational()?;
                    entries.push((v, r));
                    match self.peek_skipping() {
                        Some(Tok::Semi) => {
                            self.next();
                        }
                        Some(Tok::RBrace) => {}
                        _ => return Err(self.error_at("expected ';' or '}' in fuzzy table")),
                    }
                }
                Ok(FuzzyRuleExpr::Table(entries))
            }
            other => Err(self.error_at(format!("unknown fuzzy rule '{other}'"))),
        }
    }

    fn block(&mut self) -> Result<Option<Block>, ParseError> {
        self.skip_newlines();
        let Some(tok) = self.peek() else { return Ok(None) };
        let kind = match tok {
            Tok::Ident(w) => w.clone(),
            other => {
                let other = other.clone();
                return Err(self.error_at(format!("expected block keyword, found {other:?}")));
            }
        };
        self.next();
        let name = self.ident()?;
        self.expect(Tok::LBrace)?;
        let block = match kind.as_str() {
            "structure" => {
                let mut family = None;
                let mut carrier = None;
                let mut ground = None;
                let mut scalars = None;
                let mut action = None;
                let mut zero = None;
                loop {
                    self.skip_newlines();
                    if matches!(self.peek(), Some(Tok::RBrace)) {
                        self.next();
                        break;
                    }
                    let key = self.ident()?;
                    self.expect(Tok::Equals)?;
                    match key.as_str() {
                        "family" => family = Some(self.ident()?),
                        "carrier" => carrier = Some(self.carrier_expr()?),
                        "ground" => ground = Some(self.set_expr()?),
                        "scalars" => scalars = Some(self.scalars_expr()?),
                        "action" => action = Some(self.action_expr()?),
                        "zero" => zero = Some(self.literal()?),
                        other => {
                            return Err(
                                self.error_at(format!("unknown structure key '{other}'"))
                            )
                        }
                    }
                    self.statement_end()?;
                }
                let missing = |what: &str| self.error_at(format!("structure needs '{what}'"));
                Block::Structure(StructureBlock {
                    name,
                    family: family.ok_or_else(|| missing("family"))?,
                    carrier: carrier.ok_or_else(|| missing("carrier"))?,
                    ground: ground.unwrap_or(SetExpr::All),
                    scalars: scalars.ok_or_else(|| missing("scalars"))?,
                    action,
                    zero,
                })
            }
            "map" => {
                let mut source = None;
                let mut target = None;
                let mut rule = None;
                loop {
                    self.skip_newlines();
                    if matches!(self.peek(), Some(Tok::RBrace)) {
                        self.next();
                        break;
                    }
                    let key = self.ident()?;
                    self.expect(Tok::Equals)?;
                    match key.as_str() {
                        "source" => source = Some(self.ident()?),
                        "target" => target = Some(self.ident()?),
                        "rule" => rule = Some(self.map_rule_expr()?),
                        other => {
                            return Err(self.error_at(format!("unknown map key '{other}'")))
                        }
                    }
                    self.statement_end()?;
                }
                let missing = |what: &str| self.error_at(format!("map needs '{what}'"));
                Block::Map(MapBlock {
                    name,
                    source: source.ok_or_else(|| missing("source"))?,
                    target: target.ok_or_else(|| missing("target"))?,
                    rule: rule.ok_or_else(|| missing("rule"))?,
                })
            }
            "fuzzy" => {
                let mut structure = None;
                let mut rule = None;
                loop {
                    self.skip_newlines();
                    if matches!(self.peek(), Some(Tok::RBrace)) {
                        self.next();
                        break;
                    }
                    let key = self.ident()?;
                    self.expect(Tok::Equals)?;
                    match key.as_str() {
                        "structure" => structure = Some(self.ident()?),
                        "rule" => rule = Some(self.fuzzy_rule_expr()?),
                        other => {
                            return Err(self.error_at(format!("unknown fuzzy key '{other}'")))
                        }
                    }
                    self.statement_end()?;
                }
                let missing = |what: &str| self.error_at(format!("fuzzy needs '{what}'"));
                Block::Fuzzy(FuzzyBlock {
                    name,
                    structure: structure.ok_or_else(|| missing("structure"))?,
                    rule: rule.ok_or_else(|| missing("rule"))?,
                })
            }
            "multi" => {
                let mut components = None;
                let mut scalar_mode = None;
                loop {
                    self.skip_newlines();
                    if matches!(self.peek(), Some(Tok::RBrace)) {
                        self.next();
                        break;
                    }
                    let key = self.ident()?;
                    self.expect(Tok::Equals)?;
                    match key.as_str() {
                        "components" => {
                            let mut names = vec![self.ident()?];
                            while matches!(self.peek(), Some(Tok::Comma)) {
                                self.next();
                                names.push(self.ident()?);
                            }
                            components = Some(names);
                        }
                        "scalar_mode" => scalar_mode = Some(self.ident()?),
                        other => {
                            return Err(self.error_at(format!("unknown multi key '{other}'")))
                        }
                    }
                    self.statement_end()?;
                }
                let missing = |what: &str| self.error_at(format!("multi needs '{what}'"));
                Block::Multi(MultiBlock {
                    name,
                    components: components.ok_or_else(|| missing("components"))?,
                    scalar_mode: scalar_mode.unwrap_or_else(|| "shared".into()),
                })
            }
            other => return Err(self.error_at(format!("unknown block kind '{other}'"))),
        };
        Ok(Some(block))
    }
}

/// Parse a full definition file into its AST.
pub fn parse_definition(src: &str) -> Result<DefinitionFile, ParseError> {
    let tokens = Lexer::new(src).tokens()?;
    let mut parser = Parser { tokens, pos: 0 };
    let mut blocks = Vec::new();
    while let Some(block) = parser.block()? {
        blocks.push(block);
    }
    Ok(DefinitionFile { blocks })
}
