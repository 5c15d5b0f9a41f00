//! Tree search: plain UCT and Mi-UCT over the abstract game interface.
//!
//! Both engines share one skeleton. An iteration walks the tree from the
//! root selecting one edge per node, runs a random playout from the first
//! never-visited child (or reads off a terminal verdict), and backs the
//! reward up the visited path. A child node is expanded on its second
//! visit. Every node stores its values from the perspective of the player
//! to move at that node; rewards flip once per ply (`r = 1 - r_child`), and
//! each call returns the value it used for its own update.
//!
//! The engines differ only in the tree policy:
//!
//! - UCT: `mean + C * sqrt(ln(N.t) / pulls)`.
//! - Mi-UCT: `mean + sqrt(ln(N.T d^2) * r_i / (2 N.k))` with `r_i =
//!   <numerator> / pulls` (see [`RNumerator`]), run episodically per node:
//!   expansion grants a budget of 2, and whenever the node's visits reach
//!   the budget the gap estimate resets and the budget squares
//!   (`N.T <- N.t + N.T^2`). Between rollovers the gap halves at deadlines
//!   sized by the count of children still near the node's own mean.
//!
//! Unvisited children have infinite value in both engines; ties break to
//! the lowest move index. Searches start from a fresh root every move.

use thiserror::Error;

use crate::bandit::{ln_clamped, ModIucbState};
use crate::game::{GameState, Move, Winner};
use crate::rng::PlayoutRng;

#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("playouts per move must be at least 1")]
    NoPlayouts,
    #[error("UCT exploration constant must be positive (got {0})")]
    InvalidExplorationC(f64),
    #[error("cannot search a terminal position")]
    TerminalRoot,
    #[error("unknown engine spec `{0}` (expected `miuct` or `uct:C=<real>`)")]
    BadSpec(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineKind {
    Uct,
    MiUct,
}

/// Reference value for Mi-UCT's per-deadline child recount. The tree
/// pseudo-code compares child bounds against the node's own mean; the
/// bandit-style maximum child mean is available for comparison runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EliminationReference {
    #[default]
    NodeMean,
    MaxChildMean,
}

/// Numerator of Mi-UCT's per-child widening factor `r_i = <numerator> /
/// pulls_i`.
///
/// The node's 1-based episode number is the default: it keeps the bound on
/// the reward scale at realistic playout budgets while still widening a
/// child's bound the less it has been sampled, and it reproduces the
/// reference match behavior (strong at 1000 playouts per move, fading as
/// budgets grow, since later episodes widen the bound). The episode budget
/// `N.T` is the bandit algorithm's literal `r_i = T / t_i`; under per-node
/// episodic restarts `N.T` reaches thousands within a few hundred visits
/// and that reading degenerates into breadth-first sweeping. All readings
/// stay switchable for comparison runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RNumerator {
    /// The 1-based episode number (1 in the initial episode, bumped at
    /// every rollover).
    #[default]
    EpisodeIndex,
    /// The episode budget `N.T` (the bandit algorithm's `r_i = T / t_i`).
    EpisodeBudget,
    /// The play index at which the current episode began (the previous
    /// `N.T`, i.e. the last episode-update point).
    EpisodeStart,
    /// The next gap-halving deadline `N.deltaUpdate`.
    DeadlinePlay,
    /// The per-arm sample target `N.k`.
    SampleTarget,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EngineConfig {
    pub kind: EngineKind,
    /// Exploration constant; read by UCT only.
    pub exploration_c: f64,
    pub playouts_per_move: u32,
    pub elimination_reference: EliminationReference,
    pub r_numerator: RNumerator,
}

impl EngineConfig {
    pub fn uct(exploration_c: f64, playouts_per_move: u32) -> Self {
        EngineConfig {
            kind: EngineKind::Uct,
            exploration_c,
            playouts_per_move,
            elimination_reference: EliminationReference::NodeMean,
            r_numerator: RNumerator::default(),
        }
    }

    pub fn miuct(playouts_per_move: u32) -> Self {
        EngineConfig {
            kind: EngineKind::MiUct,
            exploration_c: 0.0,
            playouts_per_move,
            elimination_reference: EliminationReference::NodeMean,
            r_numerator: RNumerator::default(),
        }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.playouts_per_move == 0 {
            return Err(EngineError::NoPlayouts);
        }
        if self.kind == EngineKind::Uct
            && (self.exploration_c.is_nan() || self.exploration_c <= 0.0)
        {
            return Err(EngineError::InvalidExplorationC(self.exploration_c));
        }
        Ok(())
    }

    /// Parses an engine spec: `miuct` or `uct:C=<real>`.
    pub fn parse_spec(spec: &str, playouts_per_move: u32) -> Result<Self, EngineError> {
        let bad = || EngineError::BadSpec(spec.to_string());
        if spec == "miuct" {
            return Ok(Self::miuct(playouts_per_move));
        }
        if let Some(rest) = spec.strip_prefix("uct:") {
            let value = rest
                .strip_prefix("C=")
                .or_else(|| rest.strip_prefix("c="))
                .ok_or_else(bad)?;
            let c: f64 = value.parse().map_err(|_| bad())?;
            let config = Self::uct(c, playouts_per_move);
            config.validate()?;
            return Ok(config);
        }
        Err(bad())
    }

    /// Short name for logs and summaries.
    pub fn describe(&self) -> String {
        match self.kind {
            EngineKind::MiUct => "miuct".to_string(),
            EngineKind::Uct => format!("uct:C={}", self.exploration_c),
        }
    }
}

const NO_CHILD: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq)]
enum EdgeStatus {
    Unknown,
    NonTerminal,
    Terminal(Winner),
}

/// Per-child statistics, stored from the perspective of the player to move
/// at the owning node.
#[derive(Clone, Debug)]
pub struct Edge {
    mv: Move,
    pulls: u32,
    mean: f64,
    child: u32,
    status: EdgeStatus,
}

impl Edge {
    pub fn mv(&self) -> Move {
        self.mv
    }
    pub fn pulls(&self) -> u32 {
        self.pulls
    }
    pub fn mean(&self) -> f64 {
        self.mean
    }
    pub fn child_id(&self) -> Option<u32> {
        (self.child != NO_CHILD).then_some(self.child)
    }
}

/// An expanded game-tree node.
#[derive(Clone, Debug)]
pub struct SearchNode {
    visits: u64,
    mean: f64,
    edges: Vec<Edge>,
    bandit: Option<ModIucbState>,
}

impl SearchNode {
    pub fn visits(&self) -> u64 {
        self.visits
    }
    pub fn mean(&self) -> f64 {
        self.mean
    }
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
    pub fn bandit(&self) -> Option<&ModIucbState> {
        self.bandit.as_ref()
    }
}

/// One search from one root position. Nodes live in an arena; node 0 is the
/// root, created expanded.
pub struct Searcher<G: GameState> {
    config: EngineConfig,
    root_state: G,
    nodes: Vec<SearchNode>,
    playouts_performed: u64,
    iterations_run: u64,
}

impl<G: GameState> Searcher<G> {
    pub fn new(config: EngineConfig, root_state: &G) -> Result<Self, EngineError> {
        config.validate()?;
        if root_state.is_terminal() {
            return Err(EngineError::TerminalRoot);
        }
        let root = Self::expand(&config, root_state);
        Ok(Searcher {
            config,
            root_state: root_state.clone(),
            nodes: vec![root],
            playouts_performed: 0,
            iterations_run: 0,
        })
    }

    /// Creates the node for a non-terminal state: one edge per legal move,
    /// plus the episodic bandit block (budget 2, gap 1) for Mi-UCT.
    fn expand(config: &EngineConfig, state: &G) -> SearchNode {
        debug_assert!(!state.is_terminal(), "expanding a terminal state");
        let edges: Vec<Edge> = state
            .legal_moves()
            .into_iter()
            .map(|mv| Edge {
                mv,
                pulls: 0,
                mean: 0.0,
                child: NO_CHILD,
                status: EdgeStatus::Unknown,
            })
            .collect();
        debug_assert!(!edges.is_empty(), "non-terminal state with no moves");
        let bandit = match config.kind {
            EngineKind::MiUct => Some(ModIucbState::new(edges.len() as u64, 2)),
            EngineKind::Uct => None,
        };
        SearchNode {
            visits: 0,
            mean: 0.0,
            edges,
            bandit,
        }
    }

    pub fn node(&self, id: u32) -> &SearchNode {
        &self.nodes[id as usize]
    }

    pub fn root(&self) -> &SearchNode {
        &self.nodes[0]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of random playouts consumed so far. Iterations that hit a
    /// terminal child read the verdict directly and run no simulation.
    pub fn playouts_performed(&self) -> u64 {
        self.playouts_performed
    }

    /// Number of tree iterations run so far.
    pub fn iterations_run(&self) -> u64 {
        self.iterations_run
    }

    /// Runs the configured number of iterations.
    pub fn run(&mut self, rng: &mut PlayoutRng) {
        for _ in 0..self.config.playouts_per_move {
            self.run_iteration(rng);
        }
    }

    /// One selection / simulation / backpropagation pass from the root.
    pub fn run_iteration(&mut self, rng: &mut PlayoutRng) {
        let state = self.root_state.clone();
        self.iterations_run += 1;
        self.playout_rec(0, &state, rng);
    }

    /// Move with the most pulls at the root; ties by higher mean, then by
    /// lowest move index.
    pub fn best_move(&self) -> Move {
        let root = &self.nodes[0];
        let mut best = &root.edges[0];
        for edge in &root.edges[1..] {
            if edge.pulls > best.pulls || (edge.pulls == best.pulls && edge.mean > best.mean) {
                best = edge;
            }
        }
        best.mv
    }

    fn select_edge(&self, node_id: u32) -> usize {
        let node = &self.nodes[node_id as usize];
        match self.config.kind {
            EngineKind::Uct => {
                let ln_t = (node.visits.max(1) as f64).ln();
                let c = self.config.exploration_c;
                let mut best = 0usize;
                let mut best_val = f64::NEG_INFINITY;
                for (i, e) in node.edges.iter().enumerate() {
                    if e.pulls == 0 {
                        return i;
                    }
                    let val = e.mean + c * (ln_t / e.pulls as f64).sqrt();
                    if val > best_val {
                        best_val = val;
                        best = i;
                    }
                }
                best
            }
            EngineKind::MiUct => {
                let st = node.bandit.as_ref().expect("mi-uct node has a bandit block");
                let ln_term = ln_clamped(st.horizon_t as f64 * st.delta * st.delta);
                let denom = 2.0 * st.n_k as f64;
                let numerator = match self.config.r_numerator {
                    RNumerator::EpisodeBudget => st.horizon_t as f64,
                    RNumerator::EpisodeStart => st.episode_start as f64,
                    RNumerator::DeadlinePlay => st.delta_deadline as f64,
                    RNumerator::SampleTarget => st.n_k as f64,
                    // 1-based: the first episode is episode 1.
                    RNumerator::EpisodeIndex => (st.episode + 1) as f64,
                };
                let mut best = 0usize;
                let mut best_val = f64::NEG_INFINITY;
                for (i, e) in node.edges.iter().enumerate() {
                    if e.pulls == 0 {
                        return i;
                    }
                    let r_i = numerator / e.pulls as f64;
                    let val = e.mean + (ln_term * r_i / denom).sqrt();
                    if val > best_val {
                        best_val = val;
                        best = i;
                    }
                }
                best
            }
        }
    }

    /// Returns the reward in the perspective of the player to move at
    /// `node_id` (the value used for this node's own update).
    fn playout_rec(&mut self, node_id: u32, state: &G, rng: &mut PlayoutRng) -> f64 {
        let edge_idx = self.select_edge(node_id);
        let (mv, pulls, mut child_id, status) = {
            let e = &self.nodes[node_id as usize].edges[edge_idx];
            (e.mv, e.pulls, e.child, e.status)
        };

        let mut child_state = state.clone();
        child_state
            .apply(mv)
            .expect("tree edges hold legal moves only");
        let child_to_move = child_state.to_move();

        // Reward from the child's to-move perspective.
        let r_child = match status {
            EdgeStatus::Terminal(winner) => winner.reward_for(child_to_move),
            EdgeStatus::Unknown if child_state.is_terminal() => {
                let winner = child_state.result().expect("state is terminal");
                self.nodes[node_id as usize].edges[edge_idx].status =
                    EdgeStatus::Terminal(winner);
                winner.reward_for(child_to_move)
            }
            _ => {
                if status == EdgeStatus::Unknown {
                    self.nodes[node_id as usize].edges[edge_idx].status = EdgeStatus::NonTerminal;
                }
                if pulls == 0 {
                    self.playouts_performed += 1;
                    child_state.random_playout(rng).reward_for(child_to_move)
                } else {
                    if child_id == NO_CHILD {
                        let node = Self::expand(&self.config, &child_state);
                        child_id = self.nodes.len() as u32;
                        self.nodes.push(node);
                        self.nodes[node_id as usize].edges[edge_idx].child = child_id;
                    }
                    self.playout_rec(child_id, &child_state, rng)
                }
            }
        };

        // Negamax flip into this node's perspective, then update.
        let r = 1.0 - r_child;
        let node = &mut self.nodes[node_id as usize];
        let edge = &mut node.edges[edge_idx];
        edge.pulls += 1;
        edge.mean += (r - edge.mean) / edge.pulls as f64;
        node.visits += 1;
        node.mean += (r - node.mean) / node.visits as f64;

        if let Some(mut st) = node.bandit.take() {
            let total_children = node.edges.len() as u64;
            // Episode rollover: reset the gap, square the budget.
            if node.visits >= st.horizon_t {
                let new_horizon = node.visits + st.horizon_t.saturating_mul(st.horizon_t);
                st.rollover(new_horizon, total_children, node.visits);
            }
            // Gap-halving deadline.
            if node.visits >= st.delta_deadline {
                let reference = match self.config.elimination_reference {
                    EliminationReference::NodeMean => node.mean,
                    EliminationReference::MaxChildMean => node
                        .edges
                        .iter()
                        .map(|e| e.mean)
                        .fold(f64::NEG_INFINITY, f64::max),
                };
                st.process_deadline(
                    node.edges.iter().map(|e| e.mean),
                    total_children,
                    reference,
                    node.visits,
                );
            }
            node.bandit = Some(st);
        }

        r
    }
}

/// Runs a full search and returns the chosen move.
pub fn search_best_move<G: GameState>(
    config: &EngineConfig,
    root: &G,
    rng: &mut PlayoutRng,
) -> Result<Move, EngineError> {
    let mut searcher = Searcher::new(*config, root)?;
    searcher.run(rng);
    Ok(searcher.best_move())
}
