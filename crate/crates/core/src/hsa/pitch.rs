//! The eight pitch-adjustment neighbourhoods.
//!
//! Every move only commits when the result stays hard-feasible; when no
//! feasible variant exists the timetable is left untouched. Moves that pick a
//! partner event or target enumerate every feasible option and choose one
//! uniformly. The three-event exchange samples partners instead, since the
//! pair space is quadratic in the number of lectures.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::CourseId;
use crate::problem::Problem;
use crate::rng::SearchRng;
use crate::timetable::Timetable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PitchProcedure {
    MoveTimeslot,
    SwapTimeslot,
    MoveLocation,
    SwapLocation,
    ExchangeLocation,
    SwapDistinctTimeslots,
    MoveRoom,
    SwapRoom,
    DoNothing,
}

impl PitchProcedure {
    /// The eight moves in band order.
    pub const MOVES: [PitchProcedure; 8] = [
        PitchProcedure::MoveTimeslot,
        PitchProcedure::SwapTimeslot,
        PitchProcedure::MoveLocation,
        PitchProcedure::SwapLocation,
        PitchProcedure::ExchangeLocation,
        PitchProcedure::SwapDistinctTimeslots,
        PitchProcedure::MoveRoom,
        PitchProcedure::SwapRoom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PitchProcedure::MoveTimeslot => "move-timeslot",
            PitchProcedure::SwapTimeslot => "swap-timeslot",
            PitchProcedure::MoveLocation => "move-location",
            PitchProcedure::SwapLocation => "swap-location",
            PitchProcedure::ExchangeLocation => "exchange-location",
            PitchProcedure::SwapDistinctTimeslots => "swap-distinct-timeslots",
            PitchProcedure::MoveRoom => "move-room",
            PitchProcedure::SwapRoom => "swap-room",
            PitchProcedure::DoNothing => "do-nothing",
        }
    }
}

/// Maps a uniform draw onto the move bands: move `k` owns
/// `(k/10 * par, (k+1)/10 * par]`, everything above `0.8 * par` does nothing.
pub fn select_pitch_procedure(u: f64, par: f64) -> PitchProcedure {
    if par > 0.0 {
        for (k, proc) in PitchProcedure::MOVES.iter().enumerate() {
            if u <= (k + 1) as f64 * par / 10.0 {
                return *proc;
            }
        }
    }
    PitchProcedure::DoNothing
}

/// A joint move: clear `removals`, then fill `placements` in order.
#[derive(Debug, Clone)]
struct Relocation {
    removals: Vec<usize>,
    placements: Vec<(CourseId, usize)>,
}

impl Relocation {
    fn swap(a: (CourseId, usize), b: (CourseId, usize), a_to: usize, b_to: usize) -> Self {
        Relocation {
            removals: vec![a.1, b.1],
            placements: vec![(a.0, a_to), (b.0, b_to)],
        }
    }

    fn is_feasible(&self, tt: &mut Timetable, problem: &Problem) -> bool {
        let originals: Vec<(CourseId, usize)> = self
            .removals
            .iter()
            .map(|&s| (tt.course_at(s).expect("moving an empty slot"), s))
            .collect();
        if !tt.try_relocate(problem, &self.removals, &self.placements) {
            return false;
        }
        let placed: Vec<usize> = self.placements.iter().map(|&(_, s)| s).collect();
        let restored = tt.try_relocate(problem, &placed, &originals);
        debug_assert!(restored);
        true
    }

    fn apply(&self, tt: &mut Timetable, problem: &Problem) -> bool {
        tt.try_relocate(problem, &self.removals, &self.placements)
    }
}

fn apply_one_of(
    tt: &mut Timetable,
    problem: &Problem,
    rng: &mut SearchRng,
    options: Vec<Relocation>,
) -> bool {
    let feasible: Vec<Relocation> = options
        .into_iter()
        .filter(|r| r.is_feasible(tt, problem))
        .collect();
    match feasible.choose(rng) {
        Some(r) => r.apply(tt, problem),
        None => false,
    }
}

/// Single-lecture move to one of `targets`: lift the lecture, keep the
/// feasible targets, drop it on a random one (or back where it was).
fn move_to_one_of(
    tt: &mut Timetable,
    problem: &Problem,
    rng: &mut SearchRng,
    slot: usize,
    targets: impl Iterator<Item = usize>,
) -> bool {
    let course = tt.remove(problem, slot).expect("moving an empty slot");
    let feasible: Vec<usize> = targets
        .filter(|&t| t != slot && tt.is_feasible_placement(problem, course, t))
        .collect();
    let to = feasible.choose(rng).copied().unwrap_or(slot);
    tt.place(problem, course, to)
        .expect("move target checked feasible");
    to != slot
}

/// Applies `proc` to the lecture at `slot`. Returns whether the timetable
/// changed.
pub fn apply_pitch(
    tt: &mut Timetable,
    problem: &Problem,
    slot: usize,
    proc: PitchProcedure,
    rng: &mut SearchRng,
) -> bool {
    let Some(course) = tt.course_at(slot) else {
        return false;
    };
    let dims = problem.dims;
    let period = dims.period_of(slot);
    let room = dims.room_of(slot);
    let others = |tt: &Timetable| -> Vec<(usize, CourseId)> {
        tt.events()
            .filter(|&(s, c)| s != slot && c != course)
            .collect()
    };

    match proc {
        PitchProcedure::DoNothing => false,
        PitchProcedure::MoveTimeslot => move_to_one_of(
            tt,
            problem,
            rng,
            slot,
            (0..dims.periods()).map(|q| dims.slot(room, q)),
        ),
        PitchProcedure::MoveLocation => move_to_one_of(tt, problem, rng, slot, 0..dims.slots()),
        PitchProcedure::MoveRoom => move_to_one_of(
            tt,
            problem,
            rng,
            slot,
            (0..dims.rooms).map(|r| dims.slot(r, period)),
        ),
        PitchProcedure::SwapTimeslot => {
            let options = others(tt)
                .into_iter()
                .filter(|&(s2, _)| dims.period_of(s2) != period)
                .map(|(s2, c2)| {
                    let to = dims.slot(room, dims.period_of(s2));
                    let back = dims.slot(dims.room_of(s2), period);
                    Relocation::swap((course, slot), (c2, s2), to, back)
                })
                .filter(|r| {
                    // both targets must be free once the pair is lifted
                    r.placements
                        .iter()
                        .all(|&(_, t)| t == slot || t == r.removals[1] || tt.course_at(t).is_none())
                })
                .collect();
            apply_one_of(tt, problem, rng, options)
        }
        PitchProcedure::SwapLocation => {
            let options = others(tt)
                .into_iter()
                .map(|(s2, c2)| Relocation::swap((course, slot), (c2, s2), s2, slot))
                .collect();
            apply_one_of(tt, problem, rng, options)
        }
        PitchProcedure::SwapRoom => {
            let options = (0..dims.rooms)
                .filter(|&r| r != room)
                .map(|r| dims.slot(r, period))
                .filter_map(|s2| tt.course_at(s2).map(|c2| (s2, c2)))
                .filter(|&(_, c2)| c2 != course)
                .map(|(s2, c2)| Relocation::swap((course, slot), (c2, s2), s2, slot))
                .collect();
            apply_one_of(tt, problem, rng, options)
        }
        PitchProcedure::ExchangeLocation => {
            let events = others(tt);
            if events.len() < 2 {
                return false;
            }
            for _ in 0..events.len() {
                let i = rng.gen_range(0..events.len());
                let mut j = rng.gen_range(0..events.len() - 1);
                if j >= i {
                    j += 1;
                }
                let (s2, c2) = events[i];
                let (s3, c3) = events[j];
                let r = Relocation {
                    removals: vec![slot, s2, s3],
                    placements: vec![(course, s2), (c2, s3), (c3, slot)],
                };
                if r.apply(tt, problem) {
                    return true;
                }
            }
            false
        }
        PitchProcedure::SwapDistinctTimeslots => {
            let options = (0..dims.periods())
                .filter(|&q| q != period)
                .map(|q| {
                    let mut r = Relocation {
                        removals: Vec::new(),
                        placements: Vec::new(),
                    };
                    for room in 0..dims.rooms {
                        let (a, b) = (dims.slot(room, period), dims.slot(room, q));
                        if let Some(c) = tt.course_at(a) {
                            r.removals.push(a);
                            r.placements.push((c, b));
                        }
                        if let Some(c) = tt.course_at(b) {
                            r.removals.push(b);
                            r.placements.push((c, a));
                        }
                    }
                    r
                })
                .collect();
            apply_one_of(tt, problem, rng, options)
        }
    }
}
