//! Row-by-row depth-first generation of Hadamard matrices in `{0,1}`
//! presentation.
//!
//! Rows 1 and 2 are fixed. Row `i >= 3` is obtained from every solution of
//! the linear system built on row `i-1`; a matrix is emitted once all `m`
//! rows exist. Distinct search paths give distinct group-list matrices, so the
//! output has no duplicates.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::gram::is_hadamard_zo;
use crate::matrix::SearchParams;
use crate::partition::{decode_matrix, Group, GroupList, PartitionMatrix, MAX_DEPTH};
use crate::solver::{build_system, enumerate_solutions, RowSystem};

/// Receives generated matrices.
pub trait MatrixSink {
    fn accept(&mut self, matrix: &PartitionMatrix) -> Result<()>;

    /// Called with every row system the sequential search builds. Not called
    /// by [`generate_parallel`].
    fn observe_system(&mut self, _system: &RowSystem) {}
}

impl MatrixSink for Vec<PartitionMatrix> {
    fn accept(&mut self, matrix: &PartitionMatrix) -> Result<()> {
        self.push(matrix.clone());
        Ok(())
    }
}

/// Adapts a closure into a [`MatrixSink`].
pub struct FnSink<F>(pub F);

impl<F> MatrixSink for FnSink<F>
where
    F: FnMut(&PartitionMatrix) -> Result<()>,
{
    fn accept(&mut self, matrix: &PartitionMatrix) -> Result<()> {
        (self.0)(matrix)
    }
}

/// Counts matrices without keeping them.
#[derive(Debug, Default)]
pub struct CountSink(pub u64);

impl MatrixSink for CountSink {
    fn accept(&mut self, _matrix: &PartitionMatrix) -> Result<()> {
        self.0 += 1;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub params: SearchParams,
    /// Stop after this many matrices.
    pub limit: Option<u64>,
    /// Check every emitted matrix with [`is_hadamard_zo`].
    pub verify_each: bool,
    /// Log `i=<row>` whenever the search enters a row.
    pub progress: bool,
    /// Stop the search once this instant has passed.
    pub deadline: Option<Instant>,
}

impl GenConfig {
    /// Verification is on by default up to `m = 15`.
    pub fn new(params: SearchParams) -> Self {
        Self {
            params,
            limit: None,
            verify_each: params.m <= 15,
            progress: false,
            deadline: None,
        }
    }

    /// # Panics
    ///
    /// If `limit` is zero.
    pub fn with_limit(mut self, limit: u64) -> Self {
        assert!(limit >= 1, "limit must be at least 1");
        self.limit = Some(limit);
        self
    }

    pub fn with_verify(mut self, verify_each: bool) -> Self {
        self.verify_each = verify_each;
        self
    }

    pub fn with_progress(mut self, progress: bool) -> Self {
        self.progress = progress;
        self
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    pub emitted: u64,
    /// False when the limit or the deadline cut the search short.
    pub exhausted: bool,
}

/// Rows 1 and 2: `[(0,2q),(1,2q-1)]` and `[(0,q),(1,q),(2,q),(3,q-1)]`, the
/// last group dropped when `q = 1`.
pub fn initial_rows(params: &SearchParams) -> (GroupList, GroupList) {
    let q = params.q;
    let first = GroupList::from_parts(1, vec![Group::new(0, 2 * q), Group::new(1, 2 * q - 1)]);
    let mut second = vec![Group::new(0, q), Group::new(1, q), Group::new(2, q)];
    if q > 1 {
        second.push(Group::new(3, q - 1));
    }
    (first, GroupList::from_parts(2, second))
}

/// Splits each parent group `(l, c)` into `(2l, k_s)` and `(2l+1, c - k_s)`,
/// omitting empty children.
///
/// # Panics
///
/// If `k` does not have one entry per parent group or exceeds a count.
pub fn child_row(parent: &GroupList, k: &[usize]) -> GroupList {
    assert_eq!(k.len(), parent.len(), "one value per parent group");
    let mut groups = Vec::with_capacity(2 * parent.len());
    for (g, &ones) in parent.groups().iter().zip(k) {
        assert!(ones <= g.count, "more ones than columns in group {}", g.label);
        if ones > 0 {
            groups.push(Group::new(2 * g.label, ones));
        }
        if g.count > ones {
            groups.push(Group::new(2 * g.label + 1, g.count - ones));
        }
    }
    GroupList::from_parts(parent.depth() + 1, groups)
}

fn check_depth(params: &SearchParams) -> Result<()> {
    if params.m > MAX_DEPTH {
        return Err(Error::DepthOverflow {
            m: params.m,
            max: MAX_DEPTH,
        });
    }
    Ok(())
}

struct Search<'a, S: MatrixSink + ?Sized> {
    config: &'a GenConfig,
    sink: &'a mut S,
    rows: Vec<GroupList>,
    emitted: u64,
    stopped: bool,
    cancel: Option<&'a AtomicBool>,
}

impl<'a, S: MatrixSink + ?Sized> Search<'a, S> {
    fn new(config: &'a GenConfig, sink: &'a mut S, prefix: Vec<GroupList>) -> Self {
        Self {
            config,
            sink,
            rows: prefix,
            emitted: 0,
            stopped: false,
            cancel: None,
        }
    }

    fn should_stop(&mut self) -> bool {
        if !self.stopped {
            let cancelled = self.cancel.is_some_and(|c| c.load(Ordering::Relaxed));
            let late = self.config.deadline.is_some_and(|d| Instant::now() >= d);
            self.stopped = cancelled || late;
        }
        self.stopped
    }

    fn emit(&mut self) -> Result<()> {
        let matrix = PartitionMatrix::from_rows_unchecked(self.rows.clone());
        if self.config.verify_each && !is_hadamard_zo(&decode_matrix(&matrix)) {
            return Err(Error::InternalInvariantViolation(format!(
                "generated matrix fails the Gram test: {matrix}"
            )));
        }
        self.sink.accept(&matrix)?;
        self.emitted += 1;
        if self.config.limit.is_some_and(|l| self.emitted >= l) {
            self.stopped = true;
        }
        Ok(())
    }

    /// Extends the current prefix, which holds rows `1..i`.
    fn extend(&mut self, i: usize) -> Result<()> {
        if self.should_stop() {
            return Ok(());
        }
        if i > self.config.params.m {
            return self.emit();
        }
        if self.config.progress {
            log::info!("i={i}");
        }
        let parent = self.rows.last().expect("rows 1 and 2 are fixed").clone();
        let system = build_system(&parent, i, &self.config.params);
        self.sink.observe_system(&system);
        for k in enumerate_solutions(&system) {
            self.rows.push(child_row(&parent, &k));
            let result = self.extend(i + 1);
            self.rows.pop();
            result?;
            if self.stopped {
                break;
            }
        }
        Ok(())
    }
}

/// Runs the sequential search, handing every complete matrix to `sink` in a
/// deterministic order.
pub fn generate<S: MatrixSink + ?Sized>(config: &GenConfig, sink: &mut S) -> Result<Outcome> {
    check_depth(&config.params)?;
    let (first, second) = initial_rows(&config.params);
    let mut search = Search::new(config, sink, vec![first, second]);
    search.extend(3)?;
    Ok(Outcome {
        emitted: search.emitted,
        exhausted: !search.stopped,
    })
}

struct ChannelSink(mpsc::SyncSender<PartitionMatrix>);

impl MatrixSink for ChannelSink {
    fn accept(&mut self, matrix: &PartitionMatrix) -> Result<()> {
        // A closed channel means the receiver has stopped collecting.
        let _ = self.0.send(matrix.clone());
        Ok(())
    }
}

/// Parallel search: each solution for row 3 becomes a task, and `threads`
/// workers drain the task list. All matrices pass through `sink` on the
/// calling thread. The multiset of emitted matrices equals that of
/// [`generate`]; their order is unspecified.
pub fn generate_parallel<S: MatrixSink + ?Sized>(
    config: &GenConfig,
    threads: usize,
    sink: &mut S,
) -> Result<Outcome> {
    check_depth(&config.params)?;
    let params = &config.params;
    let (first, second) = initial_rows(params);
    if params.m < 3 {
        return generate(config, sink);
    }
    let system = build_system(&second, 3, params);
    let tasks: Vec<GroupList> = enumerate_solutions(&system)
        .map(|k| child_row(&second, &k))
        .collect();

    // Workers do not enforce the limit themselves; the collector does.
    let worker_config = GenConfig {
        limit: None,
        ..config.clone()
    };
    let next_task = AtomicUsize::new(0);
    let cancel = AtomicBool::new(false);
    let (tx, rx) = mpsc::sync_channel::<PartitionMatrix>(1024);

    let mut emitted = 0u64;
    let mut limited = false;
    let mut sink_error = None;

    let worker_results: Vec<Result<bool>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..threads.max(1))
            .map(|_| {
                let tx = tx.clone();
                let (tasks, next_task, cancel) = (&tasks, &next_task, &cancel);
                let (worker_config, first, second) = (&worker_config, &first, &second);
                scope.spawn(move || -> Result<bool> {
                    let mut channel = ChannelSink(tx);
                    let mut completed = true;
                    loop {
                        let t = next_task.fetch_add(1, Ordering::Relaxed);
                        let Some(third) = tasks.get(t) else { break };
                        let prefix = vec![first.clone(), second.clone(), third.clone()];
                        let mut search = Search::new(worker_config, &mut channel, prefix);
                        search.cancel = Some(cancel);
                        let result = search.extend(4);
                        if result.is_err() {
                            cancel.store(true, Ordering::Relaxed);
                        }
                        result?;
                        if search.stopped {
                            completed = false;
                            break;
                        }
                    }
                    Ok(completed)
                })
            })
            .collect();
        drop(tx);

        for matrix in rx.iter() {
            if limited || sink_error.is_some() {
                continue;
            }
            match sink.accept(&matrix) {
                Ok(()) => {
                    emitted += 1;
                    if config.limit.is_some_and(|l| emitted >= l) {
                        limited = true;
                        cancel.store(true, Ordering::Relaxed);
                    }
                }
                Err(e) => {
                    sink_error = Some(e);
                    cancel.store(true, Ordering::Relaxed);
                }
            }
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect()
    });

    if let Some(e) = sink_error {
        return Err(e);
    }
    let mut exhausted = !limited;
    for r in worker_results {
        exhausted &= r?;
    }
    Ok(Outcome { emitted, exhausted })
}
