//! Formula syntax, intervals, states and traces.

use std::collections::BTreeSet;
use std::fmt;

/// A closed integer time bound `[lo, hi]`.
///
/// The type admits `lo > hi`; such intervals are rejected by
/// [`Formula::intervals_welldef`] rather than at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub const fn new(lo: usize, hi: usize) -> Self {
        Interval { lo, hi }
    }

    pub fn is_welldef(&self) -> bool {
        self.lo <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// An MLTL formula over string-named atomic propositions.
///
/// Equality is purely structural: no normalization is applied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Prop(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Future(Box<Formula>, Interval),
    Global(Box<Formula>, Interval),
    Until(Box<Formula>, Box<Formula>, Interval),
    Release(Box<Formula>, Box<Formula>, Interval),
}

/// Constructor names, in declaration order. Used for histograms and reports.
pub const CONSTRUCTOR_NAMES: [&str; 10] = [
    "True", "False", "Prop", "Not", "And", "Or", "Future", "Global", "Until", "Release",
];

impl Formula {
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn future(f: Formula, lo: usize, hi: usize) -> Self {
        Formula::Future(Box::new(f), Interval::new(lo, hi))
    }

    pub fn global(f: Formula, lo: usize, hi: usize) -> Self {
        Formula::Global(Box::new(f), Interval::new(lo, hi))
    }

    pub fn until(l: Formula, r: Formula, lo: usize, hi: usize) -> Self {
        Formula::Until(Box::new(l), Box::new(r), Interval::new(lo, hi))
    }

    pub fn release(l: Formula, r: Formula, lo: usize, hi: usize) -> Self {
        Formula::Release(Box::new(l), Box::new(r), Interval::new(lo, hi))
    }

    /// Index into [`CONSTRUCTOR_NAMES`].
    pub fn constructor_index(&self) -> usize {
        match self {
            Formula::True => 0,
            Formula::False => 1,
            Formula::Prop(_) => 2,
            Formula::Not(_) => 3,
            Formula::And(..) => 4,
            Formula::Or(..) => 5,
            Formula::Future(..) => 6,
            Formula::Global(..) => 7,
            Formula::Until(..) => 8,
            Formula::Release(..) => 9,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::True | Formula::False | Formula::Prop(_))
    }

    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True | Formula::False | Formula::Prop(_) => Vec::new(),
            Formula::Not(g) | Formula::Future(g, _) | Formula::Global(g, _) => vec![g],
            Formula::And(g, h)
            | Formula::Or(g, h)
            | Formula::Until(g, h, _)
            | Formula::Release(g, h, _) => vec![g, h],
        }
    }

    /// The interval attached to a temporal node, if any.
    pub fn interval(&self) -> Option<Interval> {
        match self {
            Formula::Future(_, iv)
            | Formula::Global(_, iv)
            | Formula::Until(_, _, iv)
            | Formula::Release(_, _, iv) => Some(*iv),
            _ => None,
        }
    }

    /// True iff every temporal operator in the formula has `lo <= hi`.
    pub fn intervals_welldef(&self) -> bool {
        self.interval().is_none_or(|iv| iv.is_welldef())
            && self.children().into_iter().all(Formula::intervals_welldef)
    }

    /// Returns the first ill-formed interval found in pre-order, if any.
    pub fn first_ill_formed(&self) -> Option<Interval> {
        if let Some(iv) = self.interval().filter(|iv| !iv.is_welldef()) {
            return Some(iv);
        }
        self.children().into_iter().find_map(Formula::first_ill_formed)
    }

    /// Atoms have depth 0; every other node is one deeper than its deepest child.
    pub fn depth(&self) -> usize {
        self.children()
            .into_iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// The set of all subformulas, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<&Formula> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if out.insert(f) {
                stack.extend(f.children());
            }
        }
        out
    }

    /// Names of all propositions occurring in the formula.
    pub fn alphabet(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Prop(p) => {
                if !out.contains(p) {
                    out.insert(p.clone());
                }
            }
            _ => self.children().into_iter().for_each(|c| c.collect_props(out)),
        }
    }
}

/// The set of propositions that hold at one timestep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    props: BTreeSet<String>,
}

impl State {
    pub fn new() -> Self {
        State::default()
    }

    pub fn contains(&self, p: &str) -> bool {
        self.props.contains(p)
    }

    pub fn insert(&mut self, p: impl Into<String>) -> bool {
        self.props.insert(p.into())
    }

    pub fn props(&self) -> &BTreeSet<String> {
        &self.props
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for State {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        State {
            props: iter.into_iter().map(Into::into).collect(),
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.props.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(p)?;
        }
        f.write_str("}")
    }
}

/// A finite sequence of states. The empty trace is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Trace {
    states: Vec<State>,
}

impl Trace {
    pub fn new(states: Vec<State>) -> Self {
        Trace { states }
    }

    pub fn empty() -> Self {
        Trace::default()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn push(&mut self, s: State) {
        self.states.push(s);
    }

    /// `self ++ other`.
    pub fn concat(&self, other: &Trace) -> Trace {
        let mut states = self.states.clone();
        states.extend(other.states.iter().cloned());
        Trace { states }
    }

    pub fn into_states(self) -> Vec<State> {
        self.states
    }
}

impl From<Vec<State>> for Trace {
    fn from(states: Vec<State>) -> Self {
        Trace { states }
    }
}

impl FromIterator<State> for Trace {
    fn from_iter<I: IntoIterator<Item = State>>(iter: I) -> Self {
        Trace {
            states: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.states.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// Builds a trace from nested slices of proposition names.
///
/// ```
/// use mltl::trace;
/// let t = trace(&[&["a"], &["a", "b"], &[]]);
/// assert_eq!(t.len(), 3);
/// ```
pub fn trace(states: &[&[&str]]) -> Trace {
    states
        .iter()
        .map(|s| s.iter().copied().collect::<State>())
        .collect()
}
