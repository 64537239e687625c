//! Janet basis completion.
//!
//! Four procedures share one state: the intermediate basis `G` (a
//! [`ReductionContext`] plus per-element prolongation marks) and the queue
//! `Q` of pending polynomials ordered by leading monomial.
//!
//! * [`Strategy::Baseline`] takes the single queue element with the smallest
//!   leading monomial, computes its full Janet normal form and inserts it.
//! * [`Strategy::StrategyI`] takes every queue element of minimal degree,
//!   head-reduces them all, then inserts them one by one, smallest first,
//!   after a full normal form against the current `G`.
//! * [`Strategy::StrategyIIHigh`] / [`Strategy::StrategyIILow`] take the same
//!   degree slice, fully reduce it, interreduce it with [`update`] and insert
//!   the result in emission order.
//!
//! Whenever a new leading monomial properly divides the leading monomial of a
//! basis element, that element is displaced back to the queue; this keeps the
//! result minimal.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::division::JanetTree;
use crate::poly::{Monomial, MonomialOrder, Polynomial, VarSet};
use crate::reduction::{nf_ordinary, ReductionContext, ReductionSteps};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    Baseline,
    StrategyI,
    StrategyIIHigh,
    StrategyIILow,
}

impl Strategy {
    pub const ALL: [Strategy; 4] =
        [Strategy::Baseline, Strategy::StrategyI, Strategy::StrategyIIHigh, Strategy::StrategyIILow];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Baseline => "baseline",
            Strategy::StrategyI => "I",
            Strategy::StrategyIIHigh => "II-high",
            Strategy::StrategyIILow => "II-low",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "baseline" => Ok(Strategy::Baseline),
            "i" | "1" => Ok(Strategy::StrategyI),
            "ii-high" | "2-high" => Ok(Strategy::StrategyIIHigh),
            "ii-low" | "2-low" => Ok(Strategy::StrategyIILow),
            _ => Err(Error::UnknownStrategy(s.to_string())),
        }
    }
}

/// Which extremal element [`update`] picks at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UpdateChoice {
    Highest,
    Lowest,
}

/// Counters collected during one completion run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub prolongations_enqueued: u64,
    pub head_reduction_steps: u64,
    pub tail_reduction_steps: u64,
    pub zero_reductions: u64,
    /// Moves of basis elements from `G` back to `Q`.
    pub displacements: u64,
    pub insertions: u64,
    pub max_queue_size: u64,
    pub basis_size: u64,
    pub wall_time_ms: f64,
}

impl RunStats {
    pub const CSV_HEADER: &'static str = "prolongations_enqueued,head_reduction_steps,tail_reduction_steps,\
zero_reductions,displacements,insertions,max_queue_size,basis_size,wall_time_ms";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{:.3}",
            self.prolongations_enqueued,
            self.head_reduction_steps,
            self.tail_reduction_steps,
            self.zero_reductions,
            self.displacements,
            self.insertions,
            self.max_queue_size,
            self.basis_size,
            self.wall_time_ms
        )
    }

    fn add_steps(&mut self, steps: ReductionSteps) {
        self.head_reduction_steps += steps.head;
        self.tail_reduction_steps += steps.tail;
    }
}

/// Result of a completion run.
#[derive(Clone, Debug)]
pub struct JanetOutput {
    /// Monic minimal Janet basis, ascending by leading monomial.
    pub basis: Vec<Polynomial>,
    pub stats: RunStats,
}

/// Notifications emitted while a run progresses.
#[derive(Debug)]
pub enum EngineEvent<'a> {
    Inserted(&'a Polynomial),
    /// A basis element moved back to the queue.
    Displaced(&'a Polynomial),
    ProlongationEnqueued(&'a Polynomial),
}

#[derive(Clone, Debug, Default)]
pub struct EngineOptions {
    /// Abort with [`Error::Timeout`] once this much wall time has passed.
    pub timeout: Option<Duration>,
}

/// Computes the monic minimal Janet basis of the ideal generated by `input`.
pub fn janet_basis(input: &[Polynomial], order: MonomialOrder, strategy: Strategy) -> Result<JanetOutput> {
    janet_basis_with(input, order, strategy, &EngineOptions::default(), &mut |_| {})
}

/// [`janet_basis`] with a timeout and an event observer.
pub fn janet_basis_with(
    input: &[Polynomial],
    order: MonomialOrder,
    strategy: Strategy,
    options: &EngineOptions,
    observer: &mut dyn FnMut(&EngineEvent<'_>),
) -> Result<JanetOutput> {
    let started = Instant::now();
    let mut engine = Engine::new(input, order, options, started, observer)?;
    let outcome = match strategy {
        Strategy::Baseline => engine.run_baseline(),
        Strategy::StrategyI => engine.run_strategy_one(),
        Strategy::StrategyIIHigh => engine.run_strategy_two(UpdateChoice::Highest),
        Strategy::StrategyIILow => engine.run_strategy_two(UpdateChoice::Lowest),
    };
    let basis = match outcome {
        Ok(Completion::Finished) => engine.finish(),
        Ok(Completion::Trivial) => vec![Polynomial::one(order)],
        Err(Error::Timeout { .. }) => {
            engine.stats.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
            return Err(Error::Timeout { stats: Box::new(engine.stats) });
        }
        Err(e) => return Err(e),
    };
    let mut stats = engine.stats;
    stats.basis_size = basis.len() as u64;
    stats.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(JanetOutput { basis, stats })
}

enum Completion {
    Finished,
    /// A nonzero constant turned up: the ideal is the whole ring.
    Trivial,
}

/// A queue element: a monic polynomial with the non-multiplicative variables
/// whose prolongations were already produced from it.
#[derive(Debug)]
struct Pending {
    poly: Polynomial,
    marks: VarSet,
    ticket: u64,
}

impl Pending {
    fn cmp_key(&self, other: &Pending) -> Ordering {
        self.poly.order().compare(self.poly.lm(), other.poly.lm()).then(self.ticket.cmp(&other.ticket))
    }
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.ticket == other.ticket
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    // BinaryHeap is a max-heap; the smallest (lm, ticket) must come out first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.cmp_key(self)
    }
}

struct Engine<'o> {
    order: MonomialOrder,
    basis: ReductionContext,
    /// Prolongation marks by basis handle.
    marks: Vec<VarSet>,
    queue: BinaryHeap<Pending>,
    next_ticket: u64,
    stats: RunStats,
    deadline: Option<Instant>,
    observer: &'o mut dyn FnMut(&EngineEvent<'_>),
}

impl<'o> Engine<'o> {
    fn new(
        input: &[Polynomial],
        order: MonomialOrder,
        options: &EngineOptions,
        started: Instant,
        observer: &'o mut dyn FnMut(&EngineEvent<'_>),
    ) -> Result<Engine<'o>> {
        if input.is_empty() {
            return Err(Error::EmptySet);
        }
        for p in input {
            if p.order() != order {
                return Err(Error::DimensionMismatch { expected: order.nvars(), found: p.nvars() });
            }
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
        }
        let mut engine = Engine {
            order,
            basis: ReductionContext::new(order),
            marks: Vec::new(),
            queue: BinaryHeap::new(),
            next_ticket: 0,
            stats: RunStats::default(),
            deadline: options.timeout.map(|t| started + t),
            observer,
        };

        // The first basis element has the smallest leading monomial, which
        // for a degree-compatible order also has minimal degree; ties keep
        // input order.
        let first = (0..input.len()).min_by(|&a, &b| order.compare(input[a].lm(), input[b].lm())).expect("nonempty");
        for (i, p) in input.iter().enumerate() {
            if i != first {
                engine.push(p.clone().make_monic(), VarSet::EMPTY);
            }
        }
        let seed = input[first].clone().make_monic();
        let handle = engine.basis.insert(seed)?;
        engine.set_marks(handle, VarSet::EMPTY);
        engine.stats.insertions += 1;
        (engine.observer)(&EngineEvent::Inserted(engine.basis.get(handle)));
        Ok(engine)
    }

    fn push(&mut self, poly: Polynomial, marks: VarSet) {
        debug_assert!(poly.is_monic());
        self.queue.push(Pending { poly, marks, ticket: self.next_ticket });
        self.next_ticket += 1;
        self.stats.max_queue_size = self.stats.max_queue_size.max(self.queue.len() as u64);
    }

    fn set_marks(&mut self, handle: usize, marks: VarSet) {
        if self.marks.len() <= handle {
            self.marks.resize(handle + 1, VarSet::EMPTY);
        }
        self.marks[handle] = marks;
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout { stats: Box::default() }),
            _ => Ok(()),
        }
    }

    /// Removes every queue element whose leading monomial has the minimal degree.
    fn pop_degree_slice(&mut self) -> Vec<Pending> {
        let Some(first) = self.queue.pop() else {
            return Vec::new();
        };
        let degree = first.poly.lm().total_degree();
        let mut slice = vec![first];
        while self.queue.peek().is_some_and(|p| p.poly.lm().total_degree() == degree) {
            slice.push(self.queue.pop().expect("peeked"));
        }
        slice
    }

    fn normal_form(&mut self, poly: Polynomial) -> Polynomial {
        let mut steps = ReductionSteps::default();
        let nf = self.basis.normal_form(poly, &mut steps);
        self.stats.add_steps(steps);
        nf.make_monic()
    }

    fn head_normal_form(&mut self, poly: Polynomial) -> Polynomial {
        let mut steps = ReductionSteps::default();
        let hnf = self.basis.head_normal_form(poly, &mut steps);
        self.stats.add_steps(steps);
        hnf.make_monic()
    }

    /// Marks survive a reduction only if it left the polynomial unchanged.
    fn reduced(&mut self, item: Pending, reduce: fn(&mut Self, Polynomial) -> Polynomial) -> Option<Pending> {
        let before = item.poly.clone();
        let after = reduce(self, item.poly);
        if after.is_zero() {
            self.stats.zero_reductions += 1;
            return None;
        }
        let marks = if after == before { item.marks } else { VarSet::EMPTY };
        Some(Pending { poly: after, marks, ticket: item.ticket })
    }

    /// Displaces every element whose leading monomial is properly divisible
    /// by `lm(h)`, then inserts `h`.
    fn displace_and_insert(&mut self, h: Polynomial, marks: VarSet) -> Result<()> {
        let lm = h.lm().clone();
        if self.basis.handle_of(&lm).is_some() {
            return Err(Error::DuplicateMonomial(lm.to_string()));
        }
        let displaced: Vec<usize> =
            self.basis.iter().filter(|(_, g)| lm.proper_divides(g.lm())).map(|(handle, _)| handle).collect();
        let any_displaced = !displaced.is_empty();
        for handle in displaced {
            let g = self.basis.remove(handle);
            self.stats.displacements += 1;
            (self.observer)(&EngineEvent::Displaced(&g));
            let marks = self.marks[handle];
            self.push(g, marks);
        }
        if any_displaced {
            // A removal can make a marked variable multiplicative again. A
            // prolongation reduced in that state vanishes trivially through its
            // own parent, so the mark must not survive.
            let handles: Vec<usize> = self.basis.iter().map(|(handle, _)| handle).collect();
            for handle in handles {
                let nm = self.basis.non_multiplicative(handle);
                self.marks[handle] = self.marks[handle].intersection(nm);
            }
        }
        let handle = self.basis.insert(h)?;
        let current_nm = self.basis.non_multiplicative(handle);
        self.set_marks(handle, marks.intersection(current_nm));
        self.stats.insertions += 1;
        (self.observer)(&EngineEvent::Inserted(self.basis.get(handle)));
        Ok(())
    }

    /// Queues `g * x` for every basis element `g` and every non-multiplicative
    /// `x` not yet used for `g`.
    fn enqueue_prolongations(&mut self) {
        let mut fresh = Vec::new();
        for (handle, g) in self.basis.iter() {
            let todo = self.basis.non_multiplicative(handle).difference(self.marks[handle]);
            for x in todo.iter() {
                fresh.push((handle, x, g.mul_var(x)));
            }
        }
        for (handle, x, prolongation) in fresh {
            self.marks[handle].insert(x);
            self.stats.prolongations_enqueued += 1;
            (self.observer)(&EngineEvent::ProlongationEnqueued(&prolongation));
            self.push(prolongation, VarSet::EMPTY);
        }
    }

    /// Inserts a nonzero normal form; `Trivial` when it is a constant.
    fn accept(&mut self, item: Pending) -> Result<Option<Completion>> {
        if item.poly.is_constant() {
            return Ok(Some(Completion::Trivial));
        }
        self.displace_and_insert(item.poly, item.marks)?;
        self.enqueue_prolongations();
        Ok(None)
    }

    fn run_baseline(&mut self) -> Result<Completion> {
        if self.basis.iter().any(|(_, g)| g.is_constant()) {
            return Ok(Completion::Trivial);
        }
        self.enqueue_prolongations();
        while let Some(item) = self.queue.pop() {
            self.check_deadline()?;
            let Some(h) = self.reduced(item, Self::normal_form) else {
                continue;
            };
            if let Some(done) = self.accept(h)? {
                return Ok(done);
            }
        }
        Ok(Completion::Finished)
    }

    fn run_strategy_one(&mut self) -> Result<Completion> {
        if self.basis.iter().any(|(_, g)| g.is_constant()) {
            return Ok(Completion::Trivial);
        }
        self.enqueue_prolongations();
        while !self.queue.is_empty() {
            self.check_deadline()?;
            let slice = self.pop_degree_slice();
            let mut batch = BinaryHeap::new();
            for s in slice {
                self.check_deadline()?;
                if let Some(p) = self.reduced(s, Self::head_normal_form) {
                    batch.push(p);
                }
            }
            while let Some(p) = batch.pop() {
                self.check_deadline()?;
                let Some(h) = self.reduced(p, Self::normal_form) else {
                    continue;
                };
                if let Some(done) = self.accept(h)? {
                    return Ok(done);
                }
            }
        }
        Ok(Completion::Finished)
    }

    fn run_strategy_two(&mut self, choice: UpdateChoice) -> Result<Completion> {
        if self.basis.iter().any(|(_, g)| g.is_constant()) {
            return Ok(Completion::Trivial);
        }
        self.enqueue_prolongations();
        while !self.queue.is_empty() {
            self.check_deadline()?;
            let slice = self.pop_degree_slice();
            let mut batch = Vec::with_capacity(slice.len());
            for s in slice {
                self.check_deadline()?;
                if let Some(p) = self.reduced(s, Self::normal_form) {
                    batch.push(p);
                }
            }
            let mut steps = ReductionSteps::default();
            let (updated, touched) = update_pending(batch, self.order, choice, &mut steps);
            self.stats.add_steps(steps);
            // Update reduces only modulo the batch, which says nothing about
            // a Janet representation by the basis. Whatever it dropped or
            // changed is reduced again modulo the basis in a later round;
            // otherwise its prolongation mark would hide a missing element.
            for item in touched {
                self.push(item.poly, item.marks);
            }
            for p in updated {
                self.check_deadline()?;
                // Batch reduction and earlier insertions from this batch can
                // leave the head reducible modulo the current basis.
                let p = if self.basis.janet_divisor(p.poly.lm()).is_some() {
                    let Some(p) = self.reduced(p, Self::normal_form) else {
                        continue;
                    };
                    p
                } else {
                    p
                };
                if let Some(done) = self.accept(p)? {
                    return Ok(done);
                }
            }
        }
        Ok(Completion::Finished)
    }

    /// Tail-reduces the final basis and brings it to the minimal Janet basis.
    ///
    /// The completed basis is Janet-complete, but an element inserted early can
    /// outlive the element that made one of its variables non-multiplicative,
    /// e.g. `{x3^2, x1*x2*x3 + x2}` completes to heads `x2, x3^2, x1*x2, x1*x3^2`.
    /// The minimal heads are the Janet completion of the minimal generators;
    /// every one of them has a Janet divisor in the completed basis.
    fn finish(&mut self) -> Vec<Polynomial> {
        let mut steps = ReductionSteps::default();
        let heads: Vec<Monomial> = self.basis.iter().map(|(_, g)| g.lm().clone()).collect();
        let generators: Vec<Monomial> =
            heads.iter().filter(|u| !heads.iter().any(|v| v.proper_divides(u))).cloned().collect();
        let mut out: Vec<Polynomial> = minimal_completion(&generators, self.order)
            .into_iter()
            .map(|m| match self.basis.handle_of(&m) {
                Some(h) => self.basis.normal_form_from(self.basis.get(h).clone(), 1, &mut steps),
                None => {
                    let (_, g) = self.basis.janet_divisor(&m).expect("completed basis is Janet-complete");
                    let f = g.mul_monomial(&m.quotient(g.lm()).expect("Janet divisor divides"));
                    self.basis.normal_form_from(f, 1, &mut steps).make_monic()
                }
            })
            .collect();
        self.stats.add_steps(steps);
        out.sort_by(|a, b| self.order.compare(a.lm(), b.lm()));
        out
    }
}

/// Janet completion of a set of monomials, adding the smallest missing
/// prolongation first.
fn minimal_completion(generators: &[Monomial], order: MonomialOrder) -> Vec<Monomial> {
    let mut tree: JanetTree<()> = JanetTree::new(order.nvars());
    let mut set = Vec::with_capacity(generators.len());
    for u in generators {
        if !tree.contains(u) {
            tree.insert(u.clone(), ()).expect("not yet present");
            set.push(u.clone());
        }
    }
    loop {
        let missing = set
            .iter()
            .flat_map(|u| tree.non_multiplicative(u).expect("indexed").iter().map(move |x| u.mul_var(x)))
            .filter(|w| tree.janet_divisor(w).is_none())
            .min_by(|a, b| order.compare(a, b));
        let Some(w) = missing else {
            return set;
        };
        tree.insert(w.clone(), ()).expect("no Janet divisor means not present");
        set.push(w);
    }
}

/// Removes the extremal element; ties go to the earliest ticket.
fn take_extremal(items: &mut Vec<Pending>, choice: UpdateChoice) -> Option<Pending> {
    let best = (0..items.len()).reduce(|best, i| {
        let ord = items[i].poly.order().compare(items[i].poly.lm(), items[best].poly.lm());
        let better = match choice {
            UpdateChoice::Highest => ord == Ordering::Greater,
            UpdateChoice::Lowest => ord == Ordering::Less,
        };
        // Equal heads keep the earlier ticket; indices follow ticket order
        // only by construction, so compare tickets explicitly.
        if better || (ord == Ordering::Equal && items[i].ticket < items[best].ticket) {
            i
        } else {
            best
        }
    })?;
    Some(items.remove(best))
}

/// Runs Update on `items`. Returns the emitted set and the inputs that
/// Update reduced to zero or changed, unmodified.
fn update_pending(
    mut items: Vec<Pending>,
    order: MonomialOrder,
    choice: UpdateChoice,
    steps: &mut ReductionSteps,
) -> (Vec<Pending>, Vec<Pending>) {
    let mut index = ReductionContext::new(order);
    let mut out = Vec::with_capacity(items.len());
    let mut touched = Vec::new();
    let Some(seed) = take_extremal(&mut items, choice) else {
        return (out, touched);
    };
    index.insert(seed.poly.clone()).expect("nonzero seed");
    out.push(seed);
    while let Some(item) = take_extremal(&mut items, choice) {
        let h = index.normal_form(item.poly.clone(), steps).make_monic();
        if h == item.poly {
            index.insert(h).expect("normal form head is not in the index");
            out.push(item);
            continue;
        }
        if !h.is_zero() {
            index.insert(h.clone()).expect("normal form head is not in the index");
            out.push(Pending { poly: h, marks: VarSet::EMPTY, ticket: item.ticket });
        }
        touched.push(item);
    }
    (out, touched)
}

/// Greedy Janet interreduction of `polys`: seed with the extremal element,
/// then repeatedly take the extremal remaining element, reduce it modulo
/// everything emitted so far and keep it if nonzero. Returned in emission
/// order, monic.
pub fn update(polys: &[Polynomial], order: MonomialOrder, choice: UpdateChoice) -> Result<Vec<Polynomial>> {
    let mut items = Vec::with_capacity(polys.len());
    for (i, p) in polys.iter().enumerate() {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        items.push(Pending { poly: p.clone().make_monic(), marks: VarSet::EMPTY, ticket: i as u64 });
    }
    let (out, _) = update_pending(items, order, choice, &mut ReductionSteps::default());
    Ok(out.into_iter().map(|p| p.poly).collect())
}

/// The reduced Gröbner basis contained in a Janet basis: drop elements whose
/// leading monomial is divisible by another leading monomial, then fully
/// reduce tails. Ascending by leading monomial.
pub fn extract_reduced_gb(janet_basis: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    let nonzero: Vec<&Polynomial> = janet_basis.iter().filter(|g| !g.is_zero()).collect();
    let kept: Vec<Polynomial> = nonzero
        .iter()
        .enumerate()
        .filter(|(i, g)| {
            !nonzero.iter().enumerate().any(|(j, f)| j != *i && f.lm().divides(g.lm()) && (f.lm() != g.lm() || j < *i))
        })
        .map(|(_, g)| (*g).clone().make_monic())
        .collect();
    let mut out: Vec<Polynomial> = kept
        .iter()
        .map(|g| {
            let lead = Polynomial::term(order, g.leading_coeff().cloned().expect("nonzero"), g.lm().clone());
            &lead + &nf_ordinary(&g.tail(), &kept)
        })
        .collect();
    out.sort_by(|a, b| order.compare(a.lm(), b.lm()));
    out
}
