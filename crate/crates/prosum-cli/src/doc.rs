//! Structured input documents: a small key-value format with nested lists,
//! cycle-notation permutations, and named entities that resolve into library
//! objects. Designed to be hand-authorable; every diagnostic names the
//! entity and field at fault.
//!
//! ```text
//! ring r { p = 2  k = 1 }
//! group g { degree = 3  generators = [ (0 1), (0 1 2) ] }
//! subgroup h { group = g  generators = [ (0 1) ] }
//! module m { ring = r  group = h  kind = trivial }
//! task { group = g  h = h  k = h  module = m  ring = r }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use prosum::bundle::{BundleMorphism, FiniteBundle};
use prosum::group::{perm_from_cycles, FiniteGroup, GSpace, Perm, Subgroup};
use prosum::mat::Mat;
use prosum::module::{Bimodule, GModule};
use prosum::ring::ChainRing;
use prosum::tower::Tower;
use prosum::tree::GGraph;

#[derive(Debug)]
pub struct DocError(pub String);

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for DocError {}

impl From<prosum::Error> for DocError {
    fn from(e: prosum::Error) -> Self {
        DocError(e.to_string())
    }
}

pub type DocResult<T> = Result<T, DocError>;

fn err<T>(msg: impl Into<String>) -> DocResult<T> {
    Err(DocError(msg.into()))
}

// ---------------------------------------------------------------- tokenizer

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(u64),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Equals,
    Comma,
}

fn tokenize(text: &str) -> DocResult<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '#' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' => {
                chars.next();
                out.push(Token::LBrace);
            }
            '}' => {
                chars.next();
                out.push(Token::RBrace);
            }
            '[' => {
                chars.next();
                out.push(Token::LBracket);
            }
            ']' => {
                chars.next();
                out.push(Token::RBracket);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            '=' => {
                chars.next();
                out.push(Token::Equals);
            }
            ',' => {
                chars.next();
                out.push(Token::Comma);
            }
            c if c.is_ascii_digit() => {
                let mut n: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as u64))
                            .ok_or_else(|| DocError("integer literal overflows u64".into()))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' || d == '-' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            other => return err(format!("unexpected character '{}'", other)),
        }
    }
    Ok(out)
}

// ------------------------------------------------------------------ values

/// A parsed field value, interpreted per field by each entity builder.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(u64),
    Ident(String),
    List(Vec<Value>),
    /// One or more parenthesized cycles, e.g. `(0 1)(2 3)`.
    Cycles(Vec<Vec<usize>>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Ident(_) => "identifier",
            Value::List(_) => "list",
            Value::Cycles(_) => "cycles",
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token, what: &str) -> DocResult<()> {
        match self.next() {
            Some(found) if found == t => Ok(()),
            other => err(format!("expected {} but found {:?}", what, other)),
        }
    }

    fn parse_value(&mut self) -> DocResult<Value> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Value::Int(n)),
            Some(Token::Ident(s)) => Ok(Value::Ident(s)),
            Some(Token::LBracket) => {
                let mut items = Vec::new();
                loop {
                    match self.peek() {
                        Some(Token::RBracket) => {
                            self.next();
                            break;
                        }
                        Some(Token::Comma) => {
                            self.next();
                        }
                        Some(_) => items.push(self.parse_value()?),
                        None => return err("unterminated list"),
                    }
                }
                Ok(Value::List(items))
            }
            Some(Token::LParen) => {
                // one or more cycles
                let mut cycles = Vec::new();
                let mut cycle = Vec::new();
                loop {
                    match self.next() {
                        Some(Token::Int(n)) => cycle.push(n as usize),
                        Some(Token::RParen) => {
                            cycles.push(std::mem::take(&mut cycle));
                            if self.peek() == Some(&Token::LParen) {
                                self.next();
                            } else {
                                break;
                            }
                        }
                        other => {
                            return err(format!(
                                "expected point or ')' in cycle, found {:?}",
                                other
                            ))
                        }
                    }
                }
                Ok(Value::Cycles(cycles))
            }
            other => err(format!("expected a value, found {:?}", other)),
        }
    }
}

/// One entity block: `kind name { field = value ... }`.
#[derive(Debug, Clone)]
pub struct Entity {
    pub kind: String,
    pub name: String,
    pub fields: Vec<(String, Value)>,
}

impl Entity {
    pub fn get(&self, field: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == field).map(|(_, v)| v)
    }

    fn require(&self, field: &str) -> DocResult<&Value> {
        self.get(field).ok_or_else(|| {
            DocError(format!(
                "{} '{}': missing required field '{}'",
                self.kind, self.name, field
            ))
        })
    }

    fn int(&self, field: &str) -> DocResult<u64> {
        match self.require(field)? {
            Value::Int(n) => Ok(*n),
            v => err(format!(
                "{} '{}': field '{}' must be an integer, found {}",
                self.kind,
                self.name,
                field,
                v.kind()
            )),
        }
    }

    fn opt_int(&self, field: &str) -> DocResult<Option<u64>> {
        match self.get(field) {
            None => Ok(None),
            Some(Value::Int(n)) => Ok(Some(*n)),
            Some(v) => err(format!(
                "{} '{}': field '{}' must be an integer, found {}",
                self.kind,
                self.name,
                field,
                v.kind()
            )),
        }
    }

    pub fn ident(&self, field: &str) -> DocResult<String> {
        match self.require(field)? {
            Value::Ident(s) => Ok(s.clone()),
            v => err(format!(
                "{} '{}': field '{}' must be a name, found {}",
                self.kind,
                self.name,
                field,
                v.kind()
            )),
        }
    }

    fn list(&self, field: &str) -> DocResult<&[Value]> {
        match self.require(field)? {
            Value::List(items) => Ok(items),
            v => err(format!(
                "{} '{}': field '{}' must be a list, found {}",
                self.kind,
                self.name,
                field,
                v.kind()
            )),
        }
    }
}

pub fn parse_document(text: &str) -> DocResult<Vec<Entity>> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let mut entities = Vec::new();
    while let Some(tok) = p.next() {
        let kind = match tok {
            Token::Ident(s) => s,
            other => return err(format!("expected an entity kind, found {:?}", other)),
        };
        let name = match p.peek() {
            Some(Token::Ident(_)) => {
                if let Some(Token::Ident(s)) = p.next() {
                    s
                } else {
                    unreachable!()
                }
            }
            Some(Token::LBrace) => String::new(),
            other => return err(format!("expected a name or '{{', found {:?}", other)),
        };
        p.expect(Token::LBrace, "'{'")?;
        let mut fields = Vec::new();
        loop {
            match p.next() {
                Some(Token::RBrace) => break,
                Some(Token::Comma) => continue,
                Some(Token::Ident(field)) => {
                    p.expect(Token::Equals, "'='")?;
                    let value = p.parse_value()?;
                    fields.push((field, value));
                }
                other => {
                    return err(format!(
                        "in {} '{}': expected a field name or '}}', found {:?}",
                        kind, name, other
                    ))
                }
            }
        }
        entities.push(Entity { kind, name, fields });
    }
    Ok(entities)
}

// ------------------------------------------------------------- resolution

/// All named objects of a document, resolved and validated.
#[derive(Debug)]
pub struct ResolvedDoc {
    pub rings: BTreeMap<String, ChainRing>,
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub modules: BTreeMap<String, ResolvedModule>,
    pub spaces: BTreeMap<String, GSpace>,
    pub bundles: BTreeMap<String, Arc<FiniteBundle>>,
    pub morphisms: BTreeMap<String, BundleMorphism>,
    pub towers: BTreeMap<String, Tower>,
    pub graphs: BTreeMap<String, GGraph>,
    pub task: Option<Entity>,
}

/// A module entry, either a right module or (with `side = left`) a left
/// module whose generator matrices compose in the opposite order.
#[derive(Debug)]
pub enum ResolvedModule {
    Right(GModule),
    Left(Bimodule),
}

impl ResolvedModule {
    pub fn right(&self, context: &str) -> DocResult<&GModule> {
        match self {
            ResolvedModule::Right(m) => Ok(m),
            ResolvedModule::Left(_) => err(format!(
                "{}: expected a right module but the entry is declared 'side = left'",
                context
            )),
        }
    }
}

fn perm_from_value(v: &Value, degree: usize, context: &str) -> DocResult<Perm> {
    match v {
        Value::Cycles(cycles) => {
            perm_from_cycles(degree, cycles).map_err(|e| DocError(format!("{}: {}", context, e)))
        }
        Value::List(items) => {
            let images: Vec<usize> = items
                .iter()
                .map(|it| match it {
                    Value::Int(n) => Ok(*n as usize),
                    other => err(format!(
                        "{}: image list entries must be integers, found {}",
                        context,
                        other.kind()
                    )),
                })
                .collect::<DocResult<_>>()?;
            if images.len() != degree {
                return err(format!(
                    "{}: image list has {} entries for degree {}",
                    context,
                    images.len(),
                    degree
                ));
            }
            Ok(images)
        }
        other => err(format!(
            "{}: a permutation is cycles or an image list, found {}",
            context,
            other.kind()
        )),
    }
}

fn usize_list(v: &Value, context: &str) -> DocResult<Vec<usize>> {
    match v {
        Value::List(items) => items
            .iter()
            .map(|it| match it {
                Value::Int(n) => Ok(*n as usize),
                other => err(format!(
                    "{}: expected integers, found {}",
                    context,
                    other.kind()
                )),
            })
            .collect(),
        other => err(format!(
            "{}: expected a list of integers, found {}",
            context,
            other.kind()
        )),
    }
}

fn matrix_from_value(v: &Value, ring: ChainRing, context: &str) -> DocResult<Mat> {
    let Value::List(rows) = v else {
        return err(format!(
            "{}: a matrix is a list of rows, found {}",
            context,
            v.kind()
        ));
    };
    let rows: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            usize_list(r, context).map(|xs| xs.into_iter().map(|x| x as u64).collect())
        })
        .collect::<DocResult<_>>()?;
    Mat::from_rows(ring, rows).map_err(|e| DocError(format!("{}: {}", context, e)))
}

pub fn resolve(entities: Vec<Entity>, max_group_order: usize) -> DocResult<ResolvedDoc> {
    let mut doc = ResolvedDoc {
        rings: BTreeMap::new(),
        groups: BTreeMap::new(),
        subgroups: BTreeMap::new(),
        modules: BTreeMap::new(),
        spaces: BTreeMap::new(),
        bundles: BTreeMap::new(),
        morphisms: BTreeMap::new(),
        towers: BTreeMap::new(),
        graphs: BTreeMap::new(),
        task: None,
    };
    for e in entities {
        match e.kind.as_str() {
            "ring" => {
                let p = e.int("p")?;
                let k = e.opt_int("k")?.unwrap_or(1) as u32;
                let ring = ChainRing::new(p, k)
                    .map_err(|er| DocError(format!("ring '{}': {}", e.name, er)))?;
                doc.rings.insert(e.name.clone(), ring);
            }
            "group" => {
                let degree = e.int("degree")? as usize;
                let gens = e
                    .list("generators")?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        perm_from_value(
                            v,
                            degree,
                            &format!("group '{}' generator {}", e.name, i),
                        )
                    })
                    .collect::<DocResult<Vec<_>>>()?;
                let g = FiniteGroup::close_generators(&gens, degree, max_group_order)
                    .map_err(|er| DocError(format!("group '{}': {}", e.name, er)))?;
                doc.groups.insert(e.name.clone(), g);
            }
            "subgroup" => {
                let gname = e.ident("group")?;
                let parent = doc.groups.get(&gname).ok_or_else(|| {
                    DocError(format!(
                        "subgroup '{}': unknown group '{}'",
                        e.name, gname
                    ))
                })?;
                let gen_indices = e
                    .list("generators")?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let ctx = format!("subgroup '{}' generator {}", e.name, i);
                        let perm = perm_from_value(v, parent.degree(), &ctx)?;
                        parent.element_index(&perm).ok_or_else(|| {
                            DocError(format!("{}: permutation is not in the group", ctx))
                        })
                    })
                    .collect::<DocResult<Vec<_>>>()?;
                let sub = Subgroup::from_generators(parent, &gen_indices)
                    .map_err(|er| DocError(format!("subgroup '{}': {}", e.name, er)))?;
                doc.subgroups.insert(e.name.clone(), sub);
            }
            "module" => {
                let resolved = resolve_module(&e, &doc)?;
                doc.modules.insert(e.name.clone(), resolved);
            }
            "space" => {
                let gname = e.ident("group")?;
                let group = doc.groups.get(&gname).ok_or_else(|| {
                    DocError(format!("space '{}': unknown group '{}'", e.name, gname))
                })?;
                let space = match e.get("kind") {
                    Some(Value::Ident(k)) if k == "regular" => GSpace::regular(group),
                    Some(Value::Ident(k)) if k == "cosets" => {
                        let hname = e.ident("subgroup")?;
                        let sub = doc.subgroups.get(&hname).ok_or_else(|| {
                            DocError(format!(
                                "space '{}': unknown subgroup '{}'",
                                e.name, hname
                            ))
                        })?;
                        GSpace::cosets(group, sub)
                            .map_err(|er| DocError(format!("space '{}': {}", e.name, er)))?
                    }
                    Some(Value::Ident(k)) if k == "trivial" => {
                        let n = e.int("points")? as usize;
                        GSpace::trivial(group, n)
                    }
                    None => {
                        let n = e.int("points")? as usize;
                        let images = e
                            .list("action")?
                            .iter()
                            .enumerate()
                            .map(|(i, v)| {
                                usize_list(
                                    v,
                                    &format!("space '{}' action row {}", e.name, i),
                                )
                            })
                            .collect::<DocResult<Vec<_>>>()?;
                        GSpace::from_generator_images(group, n, &images)
                            .map_err(|er| DocError(format!("space '{}': {}", e.name, er)))?
                    }
                    Some(v) => {
                        return err(format!(
                            "space '{}': unknown kind {:?}",
                            e.name, v
                        ))
                    }
                };
                doc.spaces.insert(e.name.clone(), space);
            }
            "bundle" => {
                let ring = lookup_ring(&e, &doc)?;
                let group = match e.get("group") {
                    None => FiniteGroup::trivial(),
                    Some(Value::Ident(gname)) => doc
                        .groups
                        .get(gname)
                        .cloned()
                        .ok_or_else(|| {
                            DocError(format!(
                                "bundle '{}': unknown group '{}'",
                                e.name, gname
                            ))
                        })?,
                    Some(v) => {
                        return err(format!(
                            "bundle '{}': group must be a name, found {}",
                            e.name,
                            v.kind()
                        ))
                    }
                };
                let labels: Vec<String> = e
                    .list("points")?
                    .iter()
                    .map(|v| match v {
                        Value::Ident(s) => Ok(s.clone()),
                        Value::Int(n) => Ok(n.to_string()),
                        other => err(format!(
                            "bundle '{}': point labels must be names or integers, found {}",
                            e.name,
                            other.kind()
                        )),
                    })
                    .collect::<DocResult<_>>()?;
                let fibers: Vec<Arc<GModule>> = e
                    .list("fibers")?
                    .iter()
                    .map(|v| match v {
                        Value::Ident(mname) => {
                            let m = doc.modules.get(mname).ok_or_else(|| {
                                DocError(format!(
                                    "bundle '{}': unknown module '{}'",
                                    e.name, mname
                                ))
                            })?;
                            let m = m.right(&format!("bundle '{}'", e.name))?;
                            Ok(Arc::new(m.clone()))
                        }
                        other => err(format!(
                            "bundle '{}': fibers must be module names, found {}",
                            e.name,
                            other.kind()
                        )),
                    })
                    .collect::<DocResult<_>>()?;
                let bundle = FiniteBundle::new(ring, &group, labels, fibers)
                    .map_err(|er| DocError(format!("bundle '{}': {}", e.name, er)))?;
                doc.bundles.insert(e.name.clone(), Arc::new(bundle));
            }
            "morphism" => {
                let sname = e.ident("source")?;
                let tname = e.ident("target")?;
                let source = doc.bundles.get(&sname).ok_or_else(|| {
                    DocError(format!(
                        "morphism '{}': unknown bundle '{}'",
                        e.name, sname
                    ))
                })?;
                let target = doc.bundles.get(&tname).ok_or_else(|| {
                    DocError(format!(
                        "morphism '{}': unknown bundle '{}'",
                        e.name, tname
                    ))
                })?;
                let space_map = usize_list(
                    e.require("space_map")?,
                    &format!("morphism '{}' space_map", e.name),
                )?;
                let ring = source.ring();
                let fiber_mats = e
                    .list("fiber_maps")?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        matrix_from_value(
                            v,
                            ring,
                            &format!("morphism '{}' fiber map {}", e.name, i),
                        )
                    })
                    .collect::<DocResult<Vec<_>>>()?;
                let m = BundleMorphism::new(source.clone(), target.clone(), space_map, fiber_mats)
                    .map_err(|er| DocError(format!("morphism '{}': {}", e.name, er)))?;
                doc.morphisms.insert(e.name.clone(), m);
            }
            "tower" => {
                let levels = e
                    .list("levels")?
                    .iter()
                    .map(|v| match v {
                        Value::Ident(bname) => doc.bundles.get(bname).cloned().ok_or_else(|| {
                            DocError(format!(
                                "tower '{}': unknown bundle '{}'",
                                e.name, bname
                            ))
                        }),
                        other => err(format!(
                            "tower '{}': levels must be bundle names, found {}",
                            e.name,
                            other.kind()
                        )),
                    })
                    .collect::<DocResult<Vec<_>>>()?;
                let transitions = e
                    .list("transitions")?
                    .iter()
                    .map(|v| match v {
                        Value::Ident(mname) => {
                            doc.morphisms.get(mname).cloned().ok_or_else(|| {
                                DocError(format!(
                                    "tower '{}': unknown morphism '{}'",
                                    e.name, mname
                                ))
                            })
                        }
                        other => err(format!(
                            "tower '{}': transitions must be morphism names, found {}",
                            e.name,
                            other.kind()
                        )),
                    })
                    .collect::<DocResult<Vec<_>>>()?;
                let tower = Tower::new(levels, transitions)
                    .map_err(|er| DocError(format!("tower '{}': {}", e.name, er)))?;
                doc.towers.insert(e.name.clone(), tower);
            }
            "graph" => {
                let gname = e.ident("group")?;
                let group = doc.groups.get(&gname).ok_or_else(|| {
                    DocError(format!("graph '{}': unknown group '{}'", e.name, gname))
                })?;
                let n_vertices = e.int("vertices")? as usize;
                let edges: Vec<(usize, usize)> = e
                    .list("edges")?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let pair =
                            usize_list(v, &format!("graph '{}' edge {}", e.name, i))?;
                        if pair.len() != 2 {
                            return err(format!(
                                "graph '{}' edge {}: an edge is a [tail, head] pair",
                                e.name, i
                            ));
                        }
                        Ok((pair[0], pair[1]))
                    })
                    .collect::<DocResult<_>>()?;
                let vertex_action = e
                    .list("vertex_action")?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        usize_list(
                            v,
                            &format!("graph '{}' vertex_action row {}", e.name, i),
                        )
                    })
                    .collect::<DocResult<Vec<_>>>()?;
                let edge_action = e
                    .list("edge_action")?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        usize_list(
                            v,
                            &format!("graph '{}' edge_action row {}", e.name, i),
                        )
                    })
                    .collect::<DocResult<Vec<_>>>()?;
                let graph = GGraph::new(group, n_vertices, edges, &vertex_action, &edge_action)
                    .map_err(|er| DocError(format!("graph '{}': {}", e.name, er)))?;
                doc.graphs.insert(e.name.clone(), graph);
            }
            "task" => {
                if doc.task.is_some() {
                    return err("a document may contain only one task block");
                }
                doc.task = Some(e);
            }
            other => {
                return err(format!(
                    "unknown entity kind '{}' (entity '{}')",
                    other, e.name
                ))
            }
        }
    }
    Ok(doc)
}

fn lookup_ring(e: &Entity, doc: &ResolvedDoc) -> DocResult<ChainRing> {
    let rname = e.ident("ring")?;
    doc.rings.get(&rname).copied().ok_or_else(|| {
        DocError(format!(
            "{} '{}': unknown ring '{}'",
            e.kind, e.name, rname
        ))
    })
}

/// The group a module lives over: either a group name or a subgroup name
/// (meaning the subgroup's standalone copy).
fn module_group(e: &Entity, doc: &ResolvedDoc) -> DocResult<Arc<FiniteGroup>> {
    let gname = e.ident("group")?;
    if let Some(g) = doc.groups.get(&gname) {
        return Ok(g.clone());
    }
    if let Some(sub) = doc.subgroups.get(&gname) {
        return Ok(sub.group().clone());
    }
    err(format!(
        "module '{}': unknown group or subgroup '{}'",
        e.name, gname
    ))
}

fn resolve_module(e: &Entity, doc: &ResolvedDoc) -> DocResult<ResolvedModule> {
    let ring = lookup_ring(e, doc)?;
    let group = module_group(e, doc)?;
    let side_left = match e.get("side") {
        None => false,
        Some(Value::Ident(s)) if s == "right" => false,
        Some(Value::Ident(s)) if s == "left" => true,
        Some(v) => {
            return err(format!(
                "module '{}': side must be 'left' or 'right', found {:?}",
                e.name, v
            ))
        }
    };
    if let Some(Value::Ident(kind)) = e.get("kind") {
        let m = match kind.as_str() {
            "trivial" => GModule::trivial(ring, &group),
            "regular" => GModule::regular(ring, &group),
            other => {
                return err(format!(
                    "module '{}': unknown kind '{}' (trivial or regular)",
                    e.name, other
                ))
            }
        };
        return Ok(if side_left {
            ResolvedModule::Left(
                Bimodule::left_module(
                    ring,
                    &group,
                    m.dim(),
                    (0..group.num_generators())
                        .map(|s| m.generator_action(s).clone())
                        .collect(),
                )
                .map_err(|er| DocError(format!("module '{}': {}", e.name, er)))?,
            )
        } else {
            ResolvedModule::Right(m)
        });
    }
    let dim = e.int("dim")? as usize;
    let mats = e
        .list("matrices")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            matrix_from_value(
                v,
                ring,
                &format!("module '{}' generator matrix {}", e.name, i),
            )
        })
        .collect::<DocResult<Vec<_>>>()?;
    if side_left {
        let b = Bimodule::left_module(ring, &group, dim, mats)
            .map_err(|er| DocError(format!("module '{}': {}", e.name, er)))?;
        Ok(ResolvedModule::Left(b))
    } else {
        let m = GModule::new(ring, &group, dim, mats)
            .map_err(|er| DocError(format!("module '{}': {}", e.name, er)))?;
        Ok(ResolvedModule::Right(m))
    }
}
