//! Line-oriented document formats for vocabularies, structures, queries,
//! sentences and the instance shorthands.
//!
//! ```text
//! vocab <name> { <Rel>/<arity> ... ; const <c> ... }
//! structure <name> : <vocab> { size = <n>  <Rel> = { (t,…) … }  <c> = <v> }
//! fop <name> : <src> -> <dst> { arity = <k> ; universe = <φ> ; <Rel> = <φ> ; const <c> = <φ> }
//! sentence <name> : <vocab> { <φ> }
//! graph <name> { n = <k> ; edges = { (u,v) … } }
//! qdnf [name] { vars = <n> ; E = { i … } ; imp = (+0 -1) (+2) … }
//! qcnf [name] { vars = <n> ; E = { i … } ; clauses = (+0 -1) … }
//! vcsat [name] { vars = <n> ; imp = (…) … ; v = [a, b, …] ; K = <k> }
//! ```
//!
//! `#` starts a comment. The builtin vocabularies `sigma_dnf`, `sigma_cnf`,
//! `sigma_g` and `tau` are always in scope. Printing is canonical: printing a
//! parsed canonical document reproduces it byte for byte.

pub(crate) mod lexer;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use lexer::{Cursor, Tok};

use crate::error::{Error, Result};
use crate::fop::FirstOrderQuery;
use crate::logic::{parse_formula_from, Formula};
use crate::problems::{encode_cnf, encode_dnf, encode_graph, encode_vcsat, Graph, LiteralSet, Qbf2Cnf, Qbf2Dnf, VcsatInstance};
use crate::structure::{Structure, Vocabulary};

/// One top-level entry of a document.
#[derive(Debug, Clone)]
pub enum Item {
    Vocab(Arc<Vocabulary>),
    Structure { name: String, structure: Structure },
    Fop(FirstOrderQuery),
    Sentence { name: String, vocab: Arc<Vocabulary>, formula: Formula },
    Graph { name: String, graph: Graph },
    /// The instance shorthands may be anonymous (empty name).
    Qdnf { name: String, inst: Qbf2Dnf },
    Qcnf { name: String, inst: Qbf2Cnf },
    Vcsat { name: String, inst: VcsatInstance },
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Vocab(v) => v.name(),
            Item::Fop(q) => q.name(),
            Item::Structure { name, .. }
            | Item::Sentence { name, .. }
            | Item::Graph { name, .. }
            | Item::Qdnf { name, .. }
            | Item::Qcnf { name, .. }
            | Item::Vcsat { name, .. } => name,
        }
    }

    /// The encoded structure of an instance item.
    pub fn to_structure(&self) -> Result<Structure> {
        match self {
            Item::Structure { structure, .. } => Ok(structure.clone()),
            Item::Graph { graph, .. } => encode_graph(graph),
            Item::Qdnf { inst, .. } => encode_dnf(inst),
            Item::Qcnf { inst, .. } => encode_cnf(inst),
            Item::Vcsat { inst, .. } => encode_vcsat(inst),
            other => Err(Error::Invalid(format!("`{}` is not an instance", other.name()))),
        }
    }

    pub fn is_instance(&self) -> bool {
        !matches!(self, Item::Vocab(_) | Item::Fop(_) | Item::Sentence { .. })
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Vocab(v) => write!(f, "{v}"),
            Item::Structure { name, structure } => f.write_str(&print_structure(name, structure)),
            Item::Fop(q) => f.write_str(&print_fop(q)),
            Item::Sentence { name, vocab, formula } => write!(f, "sentence {name} : {} {{\n  {formula}\n}}", vocab.name()),
            Item::Graph { name, graph } => f.write_str(&print_graph(name, graph)),
            Item::Qdnf { name, inst } => {
                write!(f, "qdnf {}{{ vars = {} ; E = {} ; imp ={} }}", label(name), inst.vars, set(&inst.existential), sets(&inst.implicants))
            }
            Item::Qcnf { name, inst } => {
                write!(f, "qcnf {}{{ vars = {} ; E = {} ; clauses ={} }}", label(name), inst.vars, set(&inst.existential), sets(&inst.clauses))
            }
            Item::Vcsat { name, inst } => {
                let values: Vec<String> = inst.values.iter().map(u64::to_string).collect();
                write!(
                    f,
                    "vcsat {}{{ vars = {} ; imp ={} ; v = [{}] ; K = {} }}",
                    label(name),
                    inst.vars,
                    sets(&inst.implicants),
                    values.join(", "),
                    inst.cost
                )
            }
        }
    }
}

fn label(name: &str) -> String {
    if name.is_empty() {
        String::new()
    } else {
        format!("{name} ")
    }
}

fn set(s: &BTreeSet<usize>) -> String {
    let mut out = String::from("{");
    for v in s {
        let _ = write!(out, " {v}");
    }
    out.push_str(" }");
    out
}

fn literal_set(s: &LiteralSet) -> String {
    let lits: Vec<String> = s.pos.iter().map(|v| format!("+{v}")).chain(s.neg.iter().map(|v| format!("-{v}"))).collect();
    format!("({})", lits.join(" "))
}

fn sets(s: &[LiteralSet]) -> String {
    s.iter().map(|l| format!(" {}", literal_set(l))).collect()
}

pub fn print_structure(name: &str, s: &Structure) -> String {
    let mut out = format!("structure {name} : {} {{\n  size = {}\n", s.vocab().name(), s.size());
    for (i, (rel, _)) in s.vocab().relations().iter().enumerate() {
        let _ = write!(out, "  {rel} = {{");
        for t in s.relation_at(i).iter() {
            let parts: Vec<String> = t.iter().map(usize::to_string).collect();
            let _ = write!(out, " ({})", parts.join(","));
        }
        out.push_str(" }\n");
    }
    for (i, c) in s.vocab().constants().iter().enumerate() {
        let _ = writeln!(out, "  {c} = {}", s.constant_at(i));
    }
    out.push('}');
    out
}

pub fn print_fop(q: &FirstOrderQuery) -> String {
    let mut entries = vec![format!("arity = {}", q.arity()), format!("universe = {}", q.universe())];
    entries.extend(q.relations().map(|(r, f)| format!("{r} = {f}")));
    entries.extend(q.constants().map(|(c, f)| format!("const {c} = {f}")));
    format!(
        "fop {} : {} -> {} {{\n  {}\n}}",
        q.name(),
        q.source().name(),
        q.target().name(),
        entries.join(" ;\n  ")
    )
}

pub fn print_graph(name: &str, g: &Graph) -> String {
    let edges: String = g.edges().iter().map(|(u, v)| format!(" ({u},{v})")).collect();
    format!("graph {name} {{ n = {} ; edges = {{{edges} }} }}", g.node_count())
}

/// Items separated by blank lines, with a final newline.
pub fn print_document(items: &[Item]) -> String {
    let mut out = items.iter().map(Item::to_string).collect::<Vec<_>>().join("\n\n");
    out.push('\n');
    out
}

/// A query document with the declarations of any non-builtin vocabularies it
/// mentions.
pub fn print_fop_document(q: &FirstOrderQuery) -> String {
    let mut items = Vec::new();
    for v in [q.source(), q.target()] {
        let declared = items.iter().any(|i: &Item| i.name() == v.name());
        if Vocabulary::builtin(v.name()).as_ref() != Some(&**v) && !declared {
            items.push(Item::Vocab(v.clone()));
        }
    }
    items.push(Item::Fop(q.clone()));
    print_document(&items)
}

/// Parses documents while keeping the vocabularies declared so far in scope.
#[derive(Debug, Clone, Default)]
pub struct Reader {
    vocabs: BTreeMap<String, Arc<Vocabulary>>,
}

impl Reader {
    pub fn new() -> Self {
        Reader::default()
    }

    pub fn vocab(&self, name: &str) -> Option<Arc<Vocabulary>> {
        self.vocabs.get(name).cloned().or_else(|| Vocabulary::builtin(name).map(Arc::new))
    }

    pub fn read(&mut self, src: &str) -> Result<Vec<Item>> {
        let mut cur = Cursor::new(src)?;
        let mut items = Vec::new();
        while !cur.at_eof() {
            let item = self.item(&mut cur)?;
            if let Item::Vocab(v) = &item {
                self.vocabs.insert(v.name().to_string(), v.clone());
            }
            items.push(item);
        }
        Ok(items)
    }

    fn vocab_ref(&self, cur: &mut Cursor) -> Result<Arc<Vocabulary>> {
        let name = cur.ident()?;
        self.vocab(&name).ok_or_else(|| cur.error(format!("unknown vocabulary `{name}`")))
    }

    fn item(&self, cur: &mut Cursor) -> Result<Item> {
        let kind = cur.ident()?;
        match kind.as_str() {
            "vocab" => vocab_item(cur),
            "structure" => self.structure_item(cur),
            "fop" => self.fop_item(cur),
            "sentence" => {
                let name = cur.word()?;
                cur.expect(&Tok::Colon)?;
                let vocab = self.vocab_ref(cur)?;
                cur.expect(&Tok::LBrace)?;
                let formula = formula(cur, &vocab)?;
                cur.expect(&Tok::RBrace)?;
                Ok(Item::Sentence { name, vocab, formula })
            }
            "graph" => graph_item(cur),
            "qdnf" | "qcnf" | "vcsat" => boolean_item(cur, &kind),
            other => Err(cur.error(format!("unknown item kind `{other}`"))),
        }
    }

    fn structure_item(&self, cur: &mut Cursor) -> Result<Item> {
        let name = cur.word()?;
        cur.expect(&Tok::Colon)?;
        let vocab = self.vocab_ref(cur)?;
        cur.expect(&Tok::LBrace)?;
        cur.expect_keyword("size")?;
        cur.expect(&Tok::Eq)?;
        let size = cur.nat()?;
        let mut s = Structure::empty(vocab.clone(), size).map_err(|e| cur.error(e.to_string()))?;
        let mut seen = BTreeSet::new();
        while !cur.eat(&Tok::RBrace) {
            let sym = cur.ident()?;
            if !seen.insert(sym.clone()) {
                return Err(cur.error(format!("`{sym}` given twice")));
            }
            cur.expect(&Tok::Eq)?;
            if vocab.relation_index(&sym).is_some() {
                cur.expect(&Tok::LBrace)?;
                while !cur.eat(&Tok::RBrace) {
                    let at = cur.here().clone();
                    let t = tuple(cur)?;
                    s.insert(&sym, &t).map_err(|e| Error::parse(at.line, at.col, e.to_string()))?;
                }
            } else if vocab.constant_index(&sym).is_some() {
                let at = cur.here().clone();
                let v = cur.nat()?;
                s.set_constant(&sym, v).map_err(|e| Error::parse(at.line, at.col, e.to_string()))?;
            } else {
                return Err(cur.error(format!("`{sym}` is not in vocabulary `{}`", vocab.name())));
            }
        }
        if let Some(c) = vocab.constants().iter().find(|c| !seen.contains(*c)) {
            return Err(cur.error(format!("constant `{c}` has no value")));
        }
        Ok(Item::Structure { name, structure: s })
    }

    fn fop_item(&self, cur: &mut Cursor) -> Result<Item> {
        let start = cur.here().clone();
        let name = cur.word()?;
        cur.expect(&Tok::Colon)?;
        let source = self.vocab_ref(cur)?;
        cur.expect(&Tok::Arrow)?;
        let target = self.vocab_ref(cur)?;
        cur.expect(&Tok::LBrace)?;
        cur.expect_keyword("arity")?;
        cur.expect(&Tok::Eq)?;
        let arity = cur.nat()?;
        cur.expect(&Tok::Semi)?;
        cur.expect_keyword("universe")?;
        cur.expect(&Tok::Eq)?;
        let universe = formula(cur, &source)?;
        let (mut rels, mut consts) = (Vec::new(), Vec::new());
        while cur.eat(&Tok::Semi) {
            if matches!(cur.peek(), Tok::RBrace) {
                break;
            }
            let is_const = cur.eat_keyword("const");
            let sym = cur.ident()?;
            cur.expect(&Tok::Eq)?;
            let f = formula(cur, &source)?;
            if is_const { consts.push((sym, f)) } else { rels.push((sym, f)) };
        }
        cur.expect(&Tok::RBrace)?;
        let q = FirstOrderQuery::new(name, source, target, arity, universe, rels, consts)
            .map_err(|e| Error::parse(start.line, start.col, e.to_string()))?;
        Ok(Item::Fop(q))
    }
}

/// Parses a whole document with only the builtin vocabularies in scope.
pub fn parse_document(src: &str) -> Result<Vec<Item>> {
    Reader::new().read(src)
}

/// A standalone vocabulary declaration.
pub fn parse_vocabulary(src: &str) -> Result<Vocabulary> {
    let mut cur = Cursor::new(src)?;
    cur.expect_keyword("vocab")?;
    let Item::Vocab(v) = vocab_item(&mut cur)? else { unreachable!() };
    if !cur.at_eof() {
        return Err(cur.unexpected("end of input"));
    }
    Ok(Arc::unwrap_or_clone(v))
}

/// The single structure (or encoded instance) of a document.
pub fn parse_structure(src: &str) -> Result<Structure> {
    let items = parse_document(src)?;
    let mut instances = items.iter().filter(|i| i.is_instance());
    match (instances.next(), instances.next()) {
        (Some(i), None) => i.to_structure(),
        _ => Err(Error::Invalid("expected exactly one instance in the document".into())),
    }
}

fn formula(cur: &mut Cursor, vocab: &Vocabulary) -> Result<Formula> {
    let at = cur.here().clone();
    parse_formula_from(cur, vocab).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(at.line, at.col, other.to_string()),
    })
}

fn vocab_item(cur: &mut Cursor) -> Result<Item> {
    let at = cur.here().clone();
    let name = cur.ident()?;
    cur.expect(&Tok::LBrace)?;
    let (mut rels, mut consts) = (Vec::new(), Vec::new());
    while let Tok::Ident(_) = cur.peek() {
        let r = cur.ident()?;
        cur.expect(&Tok::Slash)?;
        rels.push((r, cur.nat()?));
    }
    if cur.eat(&Tok::Semi) {
        cur.expect_keyword("const")?;
        while let Tok::Ident(_) = cur.peek() {
            consts.push(cur.ident()?);
        }
    }
    cur.expect(&Tok::RBrace)?;
    let v = Vocabulary::new(name, rels, consts).map_err(|e| Error::parse(at.line, at.col, e.to_string()))?;
    Ok(Item::Vocab(Arc::new(v)))
}

fn tuple(cur: &mut Cursor) -> Result<Vec<usize>> {
    cur.expect(&Tok::LParen)?;
    let mut t = vec![cur.nat()?];
    while cur.eat(&Tok::Comma) {
        t.push(cur.nat()?);
    }
    cur.expect(&Tok::RParen)?;
    Ok(t)
}

fn graph_item(cur: &mut Cursor) -> Result<Item> {
    let name = cur.word()?;
    cur.expect(&Tok::LBrace)?;
    cur.expect_keyword("n")?;
    cur.expect(&Tok::Eq)?;
    let n = cur.nat()?;
    let mut g = Graph::empty(n);
    if cur.eat(&Tok::Semi) && !matches!(cur.peek(), Tok::RBrace) {
        cur.expect_keyword("edges")?;
        cur.expect(&Tok::Eq)?;
        cur.expect(&Tok::LBrace)?;
        while !cur.eat(&Tok::RBrace) {
            let at = cur.here().clone();
            let t = tuple(cur)?;
            let [u, v] = t[..] else { return Err(Error::parse(at.line, at.col, "an edge has two endpoints")) };
            g.add_edge(u, v).map_err(|e| Error::parse(at.line, at.col, e.to_string()))?;
        }
        cur.eat(&Tok::Semi);
    }
    cur.expect(&Tok::RBrace)?;
    Ok(Item::Graph { name, graph: g })
}

fn literal_sets(cur: &mut Cursor) -> Result<Vec<LiteralSet>> {
    let mut out = Vec::new();
    while cur.eat(&Tok::LParen) {
        let mut s = LiteralSet::default();
        while !cur.eat(&Tok::RParen) {
            if cur.eat(&Tok::Minus) {
                s.neg.insert(cur.nat()?);
            } else {
                cur.eat(&Tok::Plus);
                s.pos.insert(cur.nat()?);
            }
        }
        out.push(s);
    }
    Ok(out)
}

fn boolean_item(cur: &mut Cursor, kind: &str) -> Result<Item> {
    let start = cur.here().clone();
    let name = if matches!(cur.peek(), Tok::LBrace) { String::new() } else { cur.word()? };
    cur.expect(&Tok::LBrace)?;
    let mut vars = None;
    let mut existential = BTreeSet::new();
    let mut lits = Vec::new();
    let mut values = Vec::new();
    let mut cost = 0u64;
    let list_key = if kind == "qcnf" { "clauses" } else { "imp" };
    loop {
        if matches!(cur.peek(), Tok::RBrace) {
            break;
        }
        let key = cur.ident()?;
        cur.expect(&Tok::Eq)?;
        match key.as_str() {
            "vars" => vars = Some(cur.nat()?),
            "E" if kind != "vcsat" => {
                cur.expect(&Tok::LBrace)?;
                while !cur.eat(&Tok::RBrace) {
                    existential.insert(cur.nat()?);
                    cur.eat(&Tok::Comma);
                }
            }
            k if k == list_key => lits = literal_sets(cur)?,
            "v" if kind == "vcsat" => {
                cur.expect(&Tok::LBracket)?;
                while !cur.eat(&Tok::RBracket) {
                    values.push(cur.nat()? as u64);
                    cur.eat(&Tok::Comma);
                }
            }
            "K" if kind == "vcsat" => cost = cur.nat()? as u64,
            other => return Err(cur.error(format!("unknown field `{other}` in {kind}"))),
        }
        if !cur.eat(&Tok::Semi) {
            break;
        }
    }
    cur.expect(&Tok::RBrace)?;
    let vars = vars.ok_or_else(|| Error::parse(start.line, start.col, format!("{kind} needs `vars`")))?;
    let located = |e: Error| Error::parse(start.line, start.col, e.to_string());
    Ok(match kind {
        "qdnf" => Item::Qdnf { name, inst: Qbf2Dnf::new(vars, existential, lits).map_err(located)? },
        "qcnf" => Item::Qcnf { name, inst: Qbf2Cnf::new(vars, existential, lits).map_err(located)? },
        _ => Item::Vcsat { name, inst: VcsatInstance::new(vars, lits, values, cost).map_err(located)? },
    })
}
