use std::collections::BTreeSet;
use std::sync::Arc;

use super::lexer::{lex, Pos, Tok, Token};
use super::{ModelError, ModelFile};
use crate::algebroid::{Algebroid, BundleSignature, Section};
use crate::connection::{Connection, Metric};
use crate::superalgebra::{Derivation, Parity, RingSignature, SuperScalar};
use crate::tensor::{BundleMatrix, Tensor12};
use crate::truss::ConnEndo;

/// Parses a model description. Unassigned components are zero; parities
/// are checked entry by entry and reported at the offending expression.
pub fn parse_model(text: &str) -> Result<ModelFile, ModelError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        ring: None,
        alg: None,
        names: BTreeSet::new(),
        model: None,
    };
    p.model()
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(SuperScalar),
    Section(Section),
    Vector(Derivation),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "a scalar",
            Value::Section(_) => "a section",
            Value::Vector(_) => "a vector field",
        }
    }

    fn is_zero_scalar(&self) -> bool {
        matches!(self, Value::Scalar(s) if s.is_zero())
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    ring: Option<Arc<RingSignature>>,
    alg: Option<Algebroid>,
    names: BTreeSet<String>,
    model: Option<ModelFile>,
}

type PResult<T> = Result<T, ModelError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        Err(ModelError::at(
            self.pos(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        ))
    }

    fn expect(&mut self, tok: Tok) -> PResult<Pos> {
        if *self.peek() == tok {
            Ok(self.bump().pos)
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let pos = self.bump().pos;
                Ok((s, pos))
            }
            _ => self.unexpected("a name"),
        }
    }

    fn keyword(&mut self, word: &str) -> PResult<Pos> {
        match self.peek() {
            Tok::Ident(s) if s == word => Ok(self.bump().pos),
            _ => self.unexpected(&format!("`{word}`")),
        }
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn skip_ends(&mut self) {
        while *self.peek() == Tok::End {
            self.bump();
        }
    }

    /// A statement ends at a newline, `;`, or the closing brace.
    fn end_statement(&mut self) -> PResult<()> {
        match self.peek() {
            Tok::End => {
                self.bump();
                Ok(())
            }
            Tok::RBrace | Tok::Eof => Ok(()),
            _ => self.unexpected("end of statement"),
        }
    }

    fn model(&mut self) -> PResult<ModelFile> {
        loop {
            self.skip_ends();
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(word) => match word.as_str() {
                    "ring" => self.ring_block()?,
                    "bundle" => self.bundle_block()?,
                    "connection" => self.connection_block()?,
                    "metric" => self.metric_block()?,
                    "endo" => self.endo_block()?,
                    "section" => self.section_decl()?,
                    _ => {
                        return Err(ModelError::at(
                            pos,
                            format!("unknown block `{word}`; expected ring, bundle, connection, metric, endo or section"),
                        ))
                    }
                },
                _ => return self.unexpected("a block"),
            }
        }
        self.model
            .take()
            .ok_or_else(|| ModelError::at(self.pos(), "the model declares no bundle"))
    }

    fn model_mut(&mut self, pos: Pos, what: &str) -> PResult<&mut ModelFile> {
        match self.model.as_mut() {
            Some(m) => Ok(m),
            None => Err(ModelError::at(pos, format!("{what} must follow the bundle block"))),
        }
    }

    fn alg(&self) -> &Algebroid {
        self.alg.as_ref().expect("checked by model_mut")
    }

    fn claim_name(&mut self, name: &str, pos: Pos) -> PResult<()> {
        if !self.names.insert(name.to_owned()) {
            return Err(ModelError::at(pos, format!("duplicate declaration of `{name}`")));
        }
        Ok(())
    }

    fn ring_block(&mut self) -> PResult<()> {
        let pos = self.keyword("ring")?;
        if self.ring.is_some() || self.alg.is_some() {
            return Err(ModelError::at(pos, "the ring must be declared once, before the bundle"));
        }
        self.expect(Tok::LBrace)?;
        let (mut even, mut odd) = (Vec::new(), Vec::new());
        let mut seen = BTreeSet::new();
        loop {
            self.skip_ends();
            if *self.peek() == Tok::RBrace {
                self.bump();
                break;
            }
            let (word, wpos) = self.ident()?;
            let target = match word.as_str() {
                "even" => &mut even,
                "odd" => &mut odd,
                _ => return Err(ModelError::at(wpos, "expected `even:` or `odd:`")),
            };
            self.expect(Tok::Colon)?;
            while let Tok::Ident(name) = self.peek().clone() {
                let npos = self.bump().pos;
                if !seen.insert(name.clone()) {
                    return Err(ModelError::at(npos, format!("duplicate coordinate `{name}`")));
                }
                target.push(name);
            }
            self.end_statement()?;
        }
        let ring = RingSignature::new(even, odd).map_err(|e| ModelError::at(pos, e.to_string()))?;
        self.ring = Some(ring);
        Ok(())
    }

    fn bundle_block(&mut self) -> PResult<()> {
        let pos = self.keyword("bundle")?;
        if self.alg.is_some() {
            return Err(ModelError::at(pos, "duplicate bundle block"));
        }
        let ring = self.ring.get_or_insert_with(RingSignature::point).clone();
        if self.at_keyword("tangent") {
            self.bump();
            let alg = Algebroid::tangent(&ring).map_err(|e| ModelError::at(pos, e.to_string()))?;
            return self.finish_bundle(alg);
        }
        self.expect(Tok::LBrace)?;
        let mut basis: Vec<(String, Parity)> = Vec::new();
        let mut bundle: Option<Arc<BundleSignature>> = None;
        let mut anchors: Vec<Option<Derivation>> = Vec::new();
        let mut structure: Option<Tensor12> = None;
        let mut declared: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut lie = false;
        loop {
            self.skip_ends();
            let spos = self.pos();
            if *self.peek() == Tok::RBrace {
                self.bump();
                break;
            }
            let is_basis = matches!(self.peek(), Tok::Ident(w) if w == "even" || w == "odd")
                && self.toks[self.at + 1].tok == Tok::Colon;
            if is_basis {
                if bundle.is_some() {
                    return Err(ModelError::at(spos, "basis declarations must come first"));
                }
                let (word, _) = self.ident()?;
                let parity = if word == "even" { Parity::Even } else { Parity::Odd };
                self.expect(Tok::Colon)?;
                while let Tok::Ident(name) = self.peek().clone() {
                    let npos = self.bump().pos;
                    if basis.iter().any(|(n, _)| *n == name) || ring.coord_index(&name).is_some() {
                        return Err(ModelError::at(npos, format!("duplicate symbol `{name}`")));
                    }
                    basis.push((name, parity));
                }
                self.end_statement()?;
                continue;
            }
            let b = match &bundle {
                Some(b) => b.clone(),
                None => {
                    let b = BundleSignature::new(&ring, basis.clone())
                        .map_err(|e| ModelError::at(spos, e.to_string()))?;
                    anchors = vec![None; b.rank()];
                    bundle = Some(b.clone());
                    b
                }
            };
            match self.peek().clone() {
                Tok::Ident(w) if w == "lie" => {
                    self.bump();
                    lie = true;
                }
                Tok::Ident(_) => {
                    let (a, apos) = self.basis_name(&b)?;
                    self.expect(Tok::Arrow)?;
                    if anchors[a].is_some() {
                        return Err(ModelError::at(apos, format!("duplicate anchor for `{}`", b.name(a))));
                    }
                    let (v, vpos) = self.expr(&ring, None)?;
                    let d = expect_vector(v, vpos, &ring)?;
                    for (i, coeff) in d.coefficients().iter().enumerate() {
                        let p = b.parity(a) + ring.coord_parity(i);
                        if !coeff.has_parity(p) {
                            return Err(ModelError::at(
                                vpos,
                                format!(
                                    "anchor component rho({})^{} must be {p}, got `{coeff}`",
                                    b.name(a),
                                    ring.coord_name(i)
                                ),
                            ));
                        }
                    }
                    anchors[a] = Some(d);
                }
                Tok::LBracket => {
                    self.bump();
                    let (a, _) = self.basis_name(&b)?;
                    self.expect(Tok::Comma)?;
                    let (c, _) = self.basis_name(&b)?;
                    self.expect(Tok::RBracket)?;
                    self.expect(Tok::Eq)?;
                    let (v, vpos) = self.expr(&ring, Some(&b))?;
                    let v = expect_section(v, vpos, &b)?;
                    let label = format!("[{},{}]", b.name(a), b.name(c));
                    let p = b.parity(a) + b.parity(c);
                    for k in 0..b.rank() {
                        let comp = v.component(k);
                        if !comp.has_parity(p + b.parity(k)) {
                            return Err(ModelError::at(
                                vpos,
                                format!("{label} must be {p}, but its {} component is `{comp}`", b.name(k)),
                            ));
                        }
                    }
                    if !declared.insert((a, c)) {
                        return Err(ModelError::at(spos, format!("duplicate declaration of {label}")));
                    }
                    let t = structure.get_or_insert_with(|| Tensor12::zero(&b));
                    let s = b.parity(a).koszul(b.parity(c));
                    let mirrored = -&v.signed(s);
                    let consistent = if a == c {
                        v == mirrored
                    } else if declared.contains(&(c, a)) {
                        t.slot(a, c) == v
                    } else {
                        true
                    };
                    if !consistent {
                        return Err(ModelError::at(
                            spos,
                            format!("{label} = {v} conflicts with graded antisymmetry"),
                        ));
                    }
                    for k in 0..b.rank() {
                        t.set(a, c, k, v.component(k).clone());
                        t.set(c, a, k, mirrored.component(k).clone());
                    }
                }
                _ => return self.unexpected("a basis, anchor, `lie` or bracket declaration"),
            }
            self.end_statement()?;
        }
        let b = match bundle {
            Some(b) => b,
            None => BundleSignature::new(&ring, basis).map_err(|e| ModelError::at(pos, e.to_string()))?,
        };
        let anchors: Vec<Derivation> = (0..b.rank())
            .map(|a| anchors.get(a).cloned().flatten().unwrap_or_else(|| Derivation::zero(&ring)))
            .collect();
        if lie && structure.is_none() {
            structure = Some(Tensor12::zero(&b));
        }
        let alg = Algebroid::new(&b, anchors, structure).map_err(|e| ModelError::at(pos, e.to_string()))?;
        self.finish_bundle(alg)
    }

    fn finish_bundle(&mut self, alg: Algebroid) -> PResult<()> {
        self.model = Some(ModelFile {
            algebroid: alg.clone(),
            connections: Vec::new(),
            metrics: Vec::new(),
            endos: Vec::new(),
            sections: Vec::new(),
        });
        self.alg = Some(alg);
        Ok(())
    }

    fn basis_name(&mut self, b: &BundleSignature) -> PResult<(usize, Pos)> {
        let (name, pos) = self.ident()?;
        b.index(&name)
            .map(|i| (i, pos))
            .ok_or_else(|| ModelError::at(pos, format!("unknown basis section `{name}`")))
    }

    fn coord_name(&mut self, ring: &RingSignature) -> PResult<(usize, Pos)> {
        let (name, pos) = self.ident()?;
        ring.coord_index(&name)
            .map(|i| (i, pos))
            .ok_or_else(|| ModelError::at(pos, format!("unknown coordinate `{name}`")))
    }

    /// `[a, b -> c]`
    fn triple_index(&mut self, b: &BundleSignature) -> PResult<(usize, usize, usize)> {
        self.expect(Tok::LBracket)?;
        let (i, _) = self.basis_name(b)?;
        self.expect(Tok::Comma)?;
        let (j, _) = self.basis_name(b)?;
        self.expect(Tok::Arrow)?;
        let (k, _) = self.basis_name(b)?;
        self.expect(Tok::RBracket)?;
        Ok((i, j, k))
    }

    fn scalar_entry(&mut self, ring: &Arc<RingSignature>, what: &str, parity: Parity) -> PResult<SuperScalar> {
        self.expect(Tok::Eq)?;
        let (v, vpos) = self.expr(ring, None)?;
        let s = expect_scalar(v, vpos, ring)?;
        if !s.has_parity(parity) {
            return Err(ModelError::at(vpos, format!("{what} must be {parity}, got `{s}`")));
        }
        Ok(s)
    }

    fn block_header(&mut self, keyword: &str) -> PResult<(String, Pos)> {
        let pos = self.keyword(keyword)?;
        self.model_mut(pos, keyword)?;
        let (name, npos) = self.ident()?;
        self.claim_name(&name, npos)?;
        self.expect(Tok::LBrace)?;
        Ok((name, pos))
    }

    fn connection_block(&mut self) -> PResult<()> {
        let (name, pos) = self.block_header("connection")?;
        let alg = self.alg().clone();
        let (ring, b) = (alg.ring().clone(), alg.bundle().clone());
        let mut gamma = Tensor12::zero(&b);
        let mut seen = BTreeSet::new();
        loop {
            self.skip_ends();
            if *self.peek() == Tok::RBrace {
                self.bump();
                break;
            }
            let kpos = self.keyword("Gamma")?;
            let (i, j, k) = self.triple_index(&b)?;
            let label = format!("Gamma[{}]", gamma.label(i, j, k));
            if !seen.insert((i, j, k)) {
                return Err(ModelError::at(kpos, format!("duplicate declaration of {label}")));
            }
            let s = self.scalar_entry(&ring, &label, gamma.natural_parity(i, j, k))?;
            gamma.set(i, j, k, s);
            self.end_statement()?;
        }
        let conn = Connection::new(gamma).map_err(|e| ModelError::at(pos, e.to_string()))?;
        self.model_mut(pos, "connection")?.connections.push((name, conn));
        Ok(())
    }

    fn metric_block(&mut self) -> PResult<()> {
        let (name, pos) = self.block_header("metric")?;
        let ring = self.alg().ring().clone();
        let n = ring.n_coords();
        let mut g = vec![SuperScalar::zero(&ring); n * n];
        let mut g_inv = g.clone();
        let mut seen = BTreeSet::new();
        loop {
            self.skip_ends();
            if *self.peek() == Tok::RBrace {
                self.bump();
                break;
            }
            let (word, wpos) = self.ident()?;
            let inverse = match word.as_str() {
                "g" => false,
                "ginv" => true,
                _ => return Err(ModelError::at(wpos, "expected `g[..]` or `ginv[..]`")),
            };
            self.expect(Tok::LBracket)?;
            let (i, _) = self.coord_name(&ring)?;
            self.expect(Tok::Comma)?;
            let (j, _) = self.coord_name(&ring)?;
            self.expect(Tok::RBracket)?;
            let label = format!("{word}[{},{}]", ring.coord_name(i), ring.coord_name(j));
            let key = (inverse, i.min(j), i.max(j));
            if !seen.insert(key) {
                return Err(ModelError::at(wpos, format!("duplicate declaration of {label} (entries are symmetric)")));
            }
            let s = self.scalar_entry(&ring, &label, Parity::Even)?;
            let m = if inverse { &mut g_inv } else { &mut g };
            m[i * n + j] = s.clone();
            m[j * n + i] = s;
            self.end_statement()?;
        }
        let metric = Metric::new(&ring, g, g_inv).map_err(|e| ModelError::at(pos, e.to_string()))?;
        self.model_mut(pos, "metric")?.metrics.push((name, metric));
        Ok(())
    }

    fn endo_block(&mut self) -> PResult<()> {
        let (name, pos) = self.block_header("endo")?;
        let alg = self.alg().clone();
        let (ring, b) = (alg.ring().clone(), alg.bundle().clone());
        let mut phi = BundleMatrix::zero(&b);
        let mut omega = Tensor12::zero(&b);
        let mut phi_seen = BTreeSet::new();
        let mut omega_seen = BTreeSet::new();
        let mut identity = false;
        loop {
            self.skip_ends();
            if *self.peek() == Tok::RBrace {
                self.bump();
                break;
            }
            let (word, wpos) = self.ident()?;
            match word.as_str() {
                "phi" if *self.peek() == Tok::Eq => {
                    self.bump();
                    self.keyword("id")?;
                    if identity || !phi_seen.is_empty() {
                        return Err(ModelError::at(wpos, "`phi = id` must come once, before any phi entry"));
                    }
                    identity = true;
                    phi = BundleMatrix::identity(&b);
                }
                "phi" => {
                    self.expect(Tok::LBracket)?;
                    let (i, _) = self.basis_name(&b)?;
                    self.expect(Tok::Arrow)?;
                    let (j, _) = self.basis_name(&b)?;
                    self.expect(Tok::RBracket)?;
                    let label = format!("phi[{}->{}]", b.name(i), b.name(j));
                    if !phi_seen.insert((i, j)) {
                        return Err(ModelError::at(wpos, format!("duplicate declaration of {label}")));
                    }
                    let s = self.scalar_entry(&ring, &label, b.parity(i) + b.parity(j))?;
                    phi.set(i, j, s);
                }
                "omega" => {
                    let (i, j, k) = self.triple_index(&b)?;
                    let label = format!("omega[{}]", omega.label(i, j, k));
                    if !omega_seen.insert((i, j, k)) {
                        return Err(ModelError::at(wpos, format!("duplicate declaration of {label}")));
                    }
                    let s = self.scalar_entry(&ring, &label, omega.natural_parity(i, j, k))?;
                    omega.set(i, j, k, s);
                }
                _ => return Err(ModelError::at(wpos, "expected `phi = id`, `phi[..]` or `omega[..]`")),
            }
            self.end_statement()?;
        }
        let e = ConnEndo::new(&alg, phi, omega).map_err(|e| ModelError::at(pos, e.to_string()))?;
        self.model_mut(pos, "endo")?.endos.push((name, e));
        Ok(())
    }

    fn section_decl(&mut self) -> PResult<()> {
        let pos = self.keyword("section")?;
        self.model_mut(pos, "a section")?;
        let (name, npos) = self.ident()?;
        self.claim_name(&name, npos)?;
        self.expect(Tok::Eq)?;
        let alg = self.alg().clone();
        let (v, vpos) = self.expr(alg.ring(), Some(alg.bundle()))?;
        let s = expect_section(v, vpos, alg.bundle())?;
        self.end_statement()?;
        self.model_mut(pos, "a section")?.sections.push((name, s));
        Ok(())
    }

    fn expr(&mut self, ring: &Arc<RingSignature>, bundle: Option<&Arc<BundleSignature>>) -> PResult<(Value, Pos)> {
        let pos = self.pos();
        let mut acc = self.term(ring, bundle)?;
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            let opos = self.bump().pos;
            let rhs = self.term(ring, bundle)?;
            let rhs = if negate { neg(rhs) } else { rhs };
            acc = add(acc, rhs, opos)?;
        }
        Ok((acc, pos))
    }

    fn term(&mut self, ring: &Arc<RingSignature>, bundle: Option<&Arc<BundleSignature>>) -> PResult<Value> {
        let mut acc = self.unary(ring, bundle)?;
        while *self.peek() == Tok::Star {
            let opos = self.bump().pos;
            let rhs = self.unary(ring, bundle)?;
            acc = mul(acc, rhs, opos)?;
        }
        Ok(acc)
    }

    fn unary(&mut self, ring: &Arc<RingSignature>, bundle: Option<&Arc<BundleSignature>>) -> PResult<Value> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(neg(self.unary(ring, bundle)?));
        }
        let base_pos = self.pos();
        let base = self.atom(ring, bundle)?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let epos = self.pos();
        let exp = match self.peek().clone() {
            Tok::Number(q) if q.is_integer() => {
                self.bump();
                u32::try_from(q.to_integer()).map_err(|_| ModelError::at(epos, "exponent too large"))?
            }
            _ => return self.unexpected("a nonnegative integer exponent"),
        };
        match base {
            Value::Scalar(s) => Ok(Value::Scalar(s.pow(exp))),
            other => Err(ModelError::at(base_pos, format!("cannot raise {} to a power", other.kind()))),
        }
    }

    fn atom(&mut self, ring: &Arc<RingSignature>, bundle: Option<&Arc<BundleSignature>>) -> PResult<Value> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Number(q) => {
                self.bump();
                Ok(Value::Scalar(SuperScalar::constant(ring, q)))
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(i) = ring.coord_index(&name) {
                    return Ok(Value::Scalar(SuperScalar::coordinate(ring, i)));
                }
                if let Some(b) = bundle {
                    if let Some(a) = b.index(&name) {
                        return Ok(Value::Section(Section::basis(b, a)));
                    }
                }
                Err(ModelError::at(pos, format!("unknown symbol `{name}`")))
            }
            Tok::Deriv(name) => {
                self.bump();
                match ring.coord_index(&name) {
                    Some(i) => Ok(Value::Vector(Derivation::coordinate(ring, i))),
                    None => Err(ModelError::at(pos, format!("unknown coordinate `{name}` in d/d{name}"))),
                }
            }
            Tok::LParen => {
                self.bump();
                let (v, _) = self.expr(ring, bundle)?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            _ => self.unexpected("an expression"),
        }
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(-s),
        Value::Section(s) => Value::Section(-&s),
        Value::Vector(d) => Value::Vector(Derivation::zero(d.signature()).try_sub(&d).expect("same ring")),
    }
}

fn add(a: Value, b: Value, pos: Pos) -> PResult<Value> {
    if b.is_zero_scalar() {
        return Ok(a);
    }
    if a.is_zero_scalar() {
        return Ok(b);
    }
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x + y)),
        (Value::Section(x), Value::Section(y)) => Ok(Value::Section(x + y)),
        (Value::Vector(x), Value::Vector(y)) => Ok(Value::Vector(x.try_add(&y).expect("same ring"))),
        (x, y) => Err(ModelError::at(pos, format!("cannot add {} and {}", x.kind(), y.kind()))),
    }
}

fn mul(a: Value, b: Value, pos: Pos) -> PResult<Value> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x * y)),
        (Value::Scalar(x), Value::Section(y)) => Ok(Value::Section(y.left_mul(&x))),
        (Value::Scalar(x), Value::Vector(y)) => Ok(Value::Vector(y.left_mul(&x).expect("same ring"))),
        (x, y) => Err(ModelError::at(
            pos,
            format!("cannot multiply {} by {}; coefficients go on the left", x.kind(), y.kind()),
        )),
    }
}

fn expect_scalar(v: Value, pos: Pos, _ring: &Arc<RingSignature>) -> PResult<SuperScalar> {
    match v {
        Value::Scalar(s) => Ok(s),
        other => Err(ModelError::at(pos, format!("expected a scalar, found {}", other.kind()))),
    }
}

fn expect_section(v: Value, pos: Pos, b: &Arc<BundleSignature>) -> PResult<Section> {
    match v {
        Value::Section(s) => Ok(s),
        v if v.is_zero_scalar() => Ok(Section::zero(b)),
        other => Err(ModelError::at(pos, format!("expected a section, found {}", other.kind()))),
    }
}

fn expect_vector(v: Value, pos: Pos, ring: &Arc<RingSignature>) -> PResult<Derivation> {
    match v {
        Value::Vector(d) => Ok(d),
        v if v.is_zero_scalar() => Ok(Derivation::zero(ring)),
        other => Err(ModelError::at(pos, format!("expected a vector field, found {}", other.kind()))),
    }
}
