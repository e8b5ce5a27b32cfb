//! Real schemes: isotopy classes of oval arrangements in the real
//! projective plane.
//!
//! A scheme is a rooted tree. The root is an extra vertex standing for the
//! whole plane; every other vertex is an oval, and an oval's children are
//! the ovals lying directly inside it. Odd-degree curves also carry one
//! one-sided component (the pseudoline `J`), stored as a flag.
//!
//! Text notation: `n` is `n` empty ovals side by side, `1<S>` is an oval
//! containing `S`, `J` is the pseudoline and `u` (or `⊔`) is disjoint union.
//! `0` is the empty scheme.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Largest literal count accepted by the parser.
pub const MAX_LITERAL_COUNT: u64 = 1 << 20;

/// Largest oval count accepted by the exhaustive scheme enumerators.
pub const MAX_ENUMERATION_OVALS: usize = 15;

/// A vertex of a scheme tree. Children are ordered; a node is canonical when
/// the children of every vertex are sorted in descending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub children: Vec<Node>,
}

impl Node {
    pub fn leaf() -> Self {
        Node { children: Vec::new() }
    }

    pub fn with_children(children: Vec<Node>) -> Self {
        Node { children }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of vertices in the subtree, this vertex included.
    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(Node::vertex_count).sum::<usize>()
    }

    /// Number of edges on the longest downward path.
    pub fn height(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn canonicalize(&mut self) {
        for c in &mut self.children {
            c.canonicalize();
        }
        self.children.sort_unstable_by(|a, b| b.cmp(a));
    }

    pub fn canonical(&self) -> Node {
        let mut n = self.clone();
        n.canonicalize();
        n
    }

    pub fn is_canonical(&self) -> bool {
        self.children.windows(2).all(|w| w[0] >= w[1])
            && self.children.iter().all(Node::is_canonical)
    }

    /// Vertices strictly below this one whose own height is at least 2.
    fn deep_descendants(&self) -> usize {
        self.children
            .iter()
            .map(|c| usize::from(c.height() >= 2) + c.deep_descendants())
            .sum()
    }

    fn leaf_children(&self) -> usize {
        self.children.iter().filter(|c| c.is_leaf()).count()
    }
}

/// Isotopy class of a curve's real point set.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RealScheme {
    pub root: Node,
    pub pseudoline: bool,
}

impl RealScheme {
    pub fn empty() -> Self {
        RealScheme::default()
    }

    pub fn new(root: Node, pseudoline: bool) -> Self {
        RealScheme { root, pseudoline }
    }

    /// The scheme whose top level is the given list of ovals.
    pub fn from_ovals(ovals: Vec<Node>, pseudoline: bool) -> Self {
        RealScheme { root: Node::with_children(ovals), pseudoline }
    }

    /// Top-level ovals.
    pub fn ovals(&self) -> &[Node] {
        &self.root.children
    }

    pub fn oval_count(&self) -> usize {
        self.root.vertex_count() - 1
    }

    pub fn depth(&self) -> usize {
        self.root.height()
    }

    pub fn canonical(&self) -> RealScheme {
        canonicalize(self)
    }

    pub fn is_canonical(&self) -> bool {
        self.root.is_canonical()
    }

    /// Equality of isotopy classes.
    pub fn is_isotopic(&self, other: &RealScheme) -> bool {
        self.pseudoline == other.pseudoline && self.root.canonical() == other.root.canonical()
    }

    /// The oval `1<self>`. A pseudoline cannot lie inside an oval, so the
    /// flag is not carried over.
    pub fn as_oval(&self) -> Node {
        self.root.clone()
    }

    /// Disjoint union. At most one operand may carry a pseudoline.
    pub fn union(&self, other: &RealScheme) -> Option<RealScheme> {
        if self.pseudoline && other.pseudoline {
            return None;
        }
        let mut children = self.root.children.clone();
        children.extend(other.root.children.iter().cloned());
        Some(RealScheme::from_ovals(children, self.pseudoline || other.pseudoline))
    }
}

impl fmt::Display for RealScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scheme(self))
    }
}

impl FromStr for RealScheme {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scheme(s)
    }
}

/// Summary counts of a scheme.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SchemeStats {
    pub oval_count: usize,
    /// Longest nest, counted in ovals.
    pub depth: usize,
    /// Ovals `O` for which some `O'' < O' < O` exists.
    pub deep_oval_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnexpectedChar(char),
    UnexpectedEnd,
    NegativeCount,
    CountTooLarge,
    /// A literal other than `1` in front of `<`.
    OvalPrefix(u64),
    PseudolineInsideOval,
    DuplicatePseudoline,
    UnclosedOval,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => f.write_str("empty input"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::NegativeCount => f.write_str("negative oval count"),
            ParseErrorKind::CountTooLarge => f.write_str("oval count too large"),
            ParseErrorKind::OvalPrefix(n) => write!(f, "expected `1<`, found `{n}<`"),
            ParseErrorKind::PseudolineInsideOval => f.write_str("`J` cannot lie inside an oval"),
            ParseErrorKind::DuplicatePseudoline => f.write_str("at most one `J` is allowed"),
            ParseErrorKind::UnclosedOval => f.write_str("missing `>`"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("scheme syntax error at byte {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SchemeError {
    #[error("degree must be at least 1, got {0}")]
    DegreeTooSmall(u32),
    #[error("enumeration cap exceeded: {requested} ovals requested, at most {cap} supported")]
    CapExceeded { requested: usize, cap: usize },
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    seen_pseudoline: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.pos, kind }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(c) => self.error(ParseErrorKind::UnexpectedChar(c)),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn union(&mut self, nested: bool, out: &mut Vec<Node>) -> Result<(), ParseError> {
        loop {
            self.skip_ws();
            self.item(nested, out)?;
            self.skip_ws();
            match self.peek() {
                Some('u') | Some('⊔') => self.bump(),
                _ => return Ok(()),
            }
        }
    }

    fn item(&mut self, nested: bool, out: &mut Vec<Node>) -> Result<(), ParseError> {
        match self.peek() {
            Some('J') => {
                if nested {
                    return Err(self.error(ParseErrorKind::PseudolineInsideOval));
                }
                if self.seen_pseudoline {
                    return Err(self.error(ParseErrorKind::DuplicatePseudoline));
                }
                self.seen_pseudoline = true;
                self.bump();
                Ok(())
            }
            Some('-') => Err(self.error(ParseErrorKind::NegativeCount)),
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let mut value: u64 = 0;
                while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(u64::from(d)))
                        .filter(|v| *v <= MAX_LITERAL_COUNT)
                        .ok_or(ParseError { position: start, kind: ParseErrorKind::CountTooLarge })?;
                    self.bump();
                }
                self.skip_ws();
                if self.peek() == Some('<') {
                    if value != 1 {
                        return Err(ParseError { position: start, kind: ParseErrorKind::OvalPrefix(value) });
                    }
                    self.bump();
                    let mut inner = Vec::new();
                    self.union(true, &mut inner)?;
                    self.skip_ws();
                    match self.peek() {
                        Some('>') => self.bump(),
                        None => return Err(self.error(ParseErrorKind::UnclosedOval)),
                        Some(_) => return Err(self.unexpected()),
                    }
                    out.push(Node::with_children(inner));
                } else {
                    out.extend((0..value).map(|_| Node::leaf()));
                }
                Ok(())
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses the scheme notation. The tree keeps the written order; use
/// [`canonicalize`] for the isotopy-class representative.
pub fn parse_scheme(text: &str) -> Result<RealScheme, ParseError> {
    let mut p = Parser { text, pos: 0, seen_pseudoline: false };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error(ParseErrorKind::Empty));
    }
    let mut ovals = Vec::new();
    p.union(false, &mut ovals)?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(RealScheme::from_ovals(ovals, p.seen_pseudoline))
}

fn push_items(node: &Node, items: &mut Vec<String>) {
    for c in node.children.iter().filter(|c| !c.is_leaf()) {
        let mut inner = Vec::new();
        push_items(c, &mut inner);
        let mut s = String::from("1<");
        s.push_str(&inner.join(" u "));
        s.push('>');
        items.push(s);
    }
    let leaves = node.leaf_children();
    if leaves > 0 {
        items.push(leaves.to_string());
    }
}

/// Canonical text: `J` first, then nested ovals in canonical order, then the
/// number of empty ovals.
pub fn format_scheme(scheme: &RealScheme) -> String {
    let canon = scheme.root.canonical();
    let mut items = Vec::new();
    if scheme.pseudoline {
        items.push(String::from("J"));
    }
    push_items(&canon, &mut items);
    if items.is_empty() {
        return String::from("0");
    }
    items.join(" u ")
}

pub fn canonicalize(scheme: &RealScheme) -> RealScheme {
    RealScheme { root: scheme.root.canonical(), pseudoline: scheme.pseudoline }
}

pub fn scheme_stats(scheme: &RealScheme) -> SchemeStats {
    SchemeStats {
        oval_count: scheme.oval_count(),
        depth: scheme.depth(),
        deep_oval_count: scheme.root.deep_descendants(),
    }
}

/// Harnack's bound `((d-1)(d-2) + 1 + (-1)^d) / 2` on the number of ovals.
pub fn harnack_bound(d: u32) -> Result<u64, SchemeError> {
    if d < 1 {
        return Err(SchemeError::DegreeTooSmall(d));
    }
    let d = u64::from(d);
    let parity = if d % 2 == 0 { 2 } else { 0 };
    Ok((d * d + 2 - 3 * d + parity) / 2)
}

/// At most `floor(3d/2)` ovals lie outside a nest of depth two.
pub fn condition_star_check(scheme: &RealScheme, d: u32) -> bool {
    scheme_stats(scheme).deep_oval_count as u64 <= 3 * u64::from(d) / 2
}

/// Harnack count, nest depth at most `d/2` and the parity of the pseudoline.
pub fn bezout_admissible_check(scheme: &RealScheme, d: u32) -> bool {
    let Ok(l) = harnack_bound(d) else {
        return false;
    };
    let stats = scheme_stats(scheme);
    stats.oval_count as u64 <= l
        && stats.depth as u64 <= u64::from(d) / 2
        && scheme.pseudoline == (d % 2 == 1)
}

/// Canonical forests of depth at most `max_depth`, grouped by node count
/// `0..=max_nodes`. Each forest is a descending list of canonical trees.
pub fn forests_by_size(max_nodes: usize, max_depth: usize) -> Vec<Vec<Vec<Node>>> {
    let mut out: Vec<Vec<Vec<Node>>> = (0..=max_nodes).map(|_| Vec::new()).collect();
    out[0].push(Vec::new());
    if max_depth == 0 || max_nodes == 0 {
        return out;
    }
    let inner = forests_by_size(max_nodes - 1, max_depth - 1);
    let mut trees: Vec<(usize, Node)> = Vec::new();
    for (size, forests) in inner.into_iter().enumerate() {
        for f in forests {
            trees.push((size + 1, Node::with_children(f)));
        }
    }
    trees.sort_unstable_by(|a, b| b.1.cmp(&a.1));

    fn extend(
        trees: &[(usize, Node)],
        start: usize,
        remaining: usize,
        current: &mut Vec<Node>,
        sink: &mut Vec<Vec<Node>>,
    ) {
        if remaining == 0 {
            sink.push(current.clone());
            return;
        }
        for i in start..trees.len() {
            let (size, ref tree) = trees[i];
            if size <= remaining {
                current.push(tree.clone());
                extend(trees, i, remaining - size, current, sink);
                current.pop();
            }
        }
    }

    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        extend(&trees, 0, n, &mut Vec::new(), slot);
    }
    out
}

/// All canonical schemes passing [`bezout_admissible_check`] for degree `d`
/// with at most `max_ovals` ovals, ordered by oval count and then by
/// canonical order.
pub fn enumerate_admissible_schemes(d: u32, max_ovals: usize) -> Result<Vec<RealScheme>, SchemeError> {
    if max_ovals > MAX_ENUMERATION_OVALS {
        return Err(SchemeError::CapExceeded { requested: max_ovals, cap: MAX_ENUMERATION_OVALS });
    }
    let l = harnack_bound(d)? as usize;
    let cap = max_ovals.min(l);
    let pseudoline = d % 2 == 1;
    let forests = forests_by_size(cap, (d / 2) as usize);
    Ok(forests
        .into_iter()
        .flatten()
        .map(|f| RealScheme::from_ovals(f, pseudoline))
        .collect())
}
