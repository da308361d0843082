use crate::algebra::Elem;
use crate::eval::{position_bits, Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent, Target};

/// Maximal runs of completed cells, each known by its length at both
/// endpoints and its product at the left endpoint. Cells are 1-based;
/// a length of 0 marks an empty cell.
#[derive(Debug, Clone)]
pub(crate) struct IntervalTables {
    size: Vec<usize>,
    mu: Vec<Elem>,
}

impl IntervalTables {
    pub fn new(cells: usize) -> Self {
        IntervalTables {
            size: vec![0; cells + 2],
            mu: vec![0; cells + 2],
        }
    }

    pub fn cells(&self) -> usize {
        self.size.len() - 2
    }

    /// Completes cell `p` with value `x` and merges it with its neighbours.
    pub fn complete(&mut self, p: usize, x: Elem, mul: impl Fn(Elem, Elem) -> Elem) {
        let (mut l, mut r, mut v) = (p, p, x);
        if self.size[p + 1] > 0 {
            v = mul(v, self.mu[p + 1]);
            r = p + self.size[p + 1];
        }
        if self.size[p - 1] > 0 {
            l = p - self.size[p - 1];
            v = mul(self.mu[l], v);
        }
        self.size[l] = r - l + 1;
        self.size[r] = r - l + 1;
        self.mu[l] = v;
    }

    /// Value of the run starting at cell 1, if it covers everything.
    pub fn total(&self) -> Option<Elem> {
        (self.cells() > 0 && self.size[1] == self.cells()).then(|| self.mu[1])
    }

    /// `(left, right, value)` of every maximal run, left to right.
    pub fn runs(&self) -> Vec<(usize, usize, Elem)> {
        let mut out = Vec::new();
        let mut i = 1;
        while i <= self.cells() {
            if self.size[i] > 0 {
                let r = i + self.size[i] - 1;
                out.push((i, r, self.mu[i]));
                i = r + 1;
            } else {
                i += 1;
            }
        }
        out
    }

    pub fn bits(&self, elem_bits: u64) -> u64 {
        let cells = self.cells();
        cells as u64 * (position_bits(cells) + elem_bits + 1)
    }
}

/// Works for every finite target: keeps the runs of streamed positions and
/// merges neighbouring runs as positions arrive.
pub struct IntervalMergeEvaluator {
    target: Target,
    tables: IntervalTables,
    audit: DeliveryAudit,
}

impl IntervalMergeEvaluator {
    pub fn new(target: Target, n: usize) -> Self {
        IntervalMergeEvaluator {
            tables: IntervalTables::new(n),
            audit: DeliveryAudit::new(n, target.alphabet_size()),
            target,
        }
    }

    pub fn runs(&self) -> Vec<(usize, usize, Elem)> {
        self.tables.runs()
    }
}

impl Evaluator for IntervalMergeEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        let s = &self.target.algebra;
        self.tables
            .complete(ev.position, self.target.image(ev.letter), |a, b| s.mul(a, b));
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        self.target.answer(self.tables.total())
    }

    fn state_bits(&self) -> u64 {
        self.tables.bits(self.target.element_bits())
    }
}
