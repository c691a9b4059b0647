//! Soft-constraint penalties.
//!
//! Weights default to the competition's standard weighting: one point per
//! student over capacity, one per extra room, five per missing working day,
//! two per isolated curriculum lecture.

use serde::Serialize;
use thiserror::Error;

use crate::problem::Problem;
use crate::timetable::{validate_hard, Timetable, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SoftWeights {
    pub capacity: u64,
    pub stability: u64,
    pub min_days: u64,
    pub compactness: u64,
}

impl Default for SoftWeights {
    fn default() -> Self {
        SoftWeights {
            capacity: 1,
            stability: 1,
            min_days: 5,
            compactness: 2,
        }
    }
}

impl SoftWeights {
    pub const UNIT: SoftWeights = SoftWeights {
        capacity: 1,
        stability: 1,
        min_days: 1,
        compactness: 1,
    };
}

/// Weighted soft-constraint costs of one timetable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PenaltyBreakdown {
    pub room_capacity: u64,
    pub room_stability: u64,
    pub min_working_days: u64,
    pub curriculum_compactness: u64,
    pub total: u64,
}

impl PenaltyBreakdown {
    fn from_parts(
        room_capacity: u64,
        room_stability: u64,
        min_working_days: u64,
        curriculum_compactness: u64,
    ) -> Self {
        PenaltyBreakdown {
            room_capacity,
            room_stability,
            min_working_days,
            curriculum_compactness,
            total: room_capacity + room_stability + min_working_days + curriculum_compactness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("timetable violates {} hard constraint(s)", .0.len())]
    Infeasible(Vec<Violation>),
}

pub fn room_capacity_cost(tt: &Timetable, problem: &Problem, w: &SoftWeights) -> u64 {
    let inst = &problem.instance;
    let excess: usize = tt
        .events()
        .map(|(slot, c)| {
            let cap = inst.rooms[tt.dims().room_of(slot)].capacity;
            inst.courses[c].students.saturating_sub(cap)
        })
        .sum();
    excess as u64 * w.capacity
}

pub fn room_stability_cost(tt: &Timetable, problem: &Problem, w: &SoftWeights) -> u64 {
    let dims = tt.dims();
    let mut used = vec![false; dims.rooms];
    let mut extra = 0u64;
    for course in 0..problem.num_courses() {
        used.iter_mut().for_each(|u| *u = false);
        let mut distinct = 0u64;
        for &slot in tt.positions(course) {
            let r = dims.room_of(slot);
            if !used[r] {
                used[r] = true;
                distinct += 1;
            }
        }
        extra += distinct.saturating_sub(1);
    }
    extra * w.stability
}

pub fn min_working_days_cost(tt: &Timetable, problem: &Problem, w: &SoftWeights) -> u64 {
    let dims = tt.dims();
    let mut used = vec![false; dims.days];
    let mut missing = 0u64;
    for course in problem.instance.courses.iter() {
        used.iter_mut().for_each(|u| *u = false);
        let mut distinct = 0usize;
        for &slot in tt.positions(course.id) {
            let d = dims.day_of_period(dims.period_of(slot));
            if !used[d] {
                used[d] = true;
                distinct += 1;
            }
        }
        missing += course.min_working_days.saturating_sub(distinct) as u64;
    }
    missing * w.min_days
}

pub fn curriculum_compactness_cost(tt: &Timetable, problem: &Problem, w: &SoftWeights) -> u64 {
    let dims = tt.dims();
    let ppd = dims.periods_per_day;
    let mut grid = vec![0u32; dims.periods()];
    let mut isolated = 0u64;
    for q in &problem.instance.curricula {
        grid.iter_mut().for_each(|g| *g = 0);
        for &c in &q.courses {
            for &slot in tt.positions(c) {
                grid[dims.period_of(slot)] += 1;
            }
        }
        for (period, &n) in grid.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let t = period % ppd;
            let before = t > 0 && grid[period - 1] > 0;
            let after = t + 1 < ppd && grid[period + 1] > 0;
            if !before && !after {
                isolated += n as u64;
            }
        }
    }
    isolated * w.compactness
}

/// Evaluates all four components without checking hard feasibility.
pub fn evaluate(tt: &Timetable, problem: &Problem, w: &SoftWeights) -> PenaltyBreakdown {
    PenaltyBreakdown::from_parts(
        room_capacity_cost(tt, problem, w),
        room_stability_cost(tt, problem, w),
        min_working_days_cost(tt, problem, w),
        curriculum_compactness_cost(tt, problem, w),
    )
}

/// Soft cost of a feasible timetable. Infeasible timetables have no cost.
pub fn total_cost(
    tt: &Timetable,
    problem: &Problem,
    w: &SoftWeights,
) -> Result<PenaltyBreakdown, CostError> {
    let violations = validate_hard(tt, problem);
    if !violations.is_empty() {
        return Err(CostError::Infeasible(violations));
    }
    Ok(evaluate(tt, problem, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    /// Two courses in separate curricula, one day of three periods, rooms of 25 and 40 seats.
    fn toy(students_a: usize, lectures_a: usize, min_days_a: usize) -> Problem {
        let text = format!(
            "Name: C\nCourses: 2\nRooms: 3\nDays: 2\nPeriods_per_day: 3\nCurricula: 2\nConstraints: 0\n\
             COURSES:\na t1 {lectures_a} {min_days_a} {students_a}\nb t2 1 1 10\n\
             ROOMS:\nsmall 25\nbig 40\nmid 30\n\
             CURRICULA:\nqa 1 a\nqb 1 b\n\
             UNAVAILABILITY_CONSTRAINTS:\nEND.\n"
        );
        Problem::new(parse_instance(&text).unwrap())
    }

    fn build(p: &Problem, placements: &[(usize, usize, usize)]) -> Timetable {
        let mut tt = Timetable::new(p);
        for &(course, room, period) in placements {
            tt.place(p, course, p.dims.slot(room, period)).unwrap();
        }
        tt
    }

    #[test]
    fn capacity_ok_is_free() {
        let p = toy(30, 1, 1);
        let tt = build(&p, &[(0, 1, 0), (1, 1, 3)]);
        assert_eq!(room_capacity_cost(&tt, &p, &SoftWeights::default()), 0);
    }

    #[test]
    fn capacity_overflow_per_lecture() {
        let p = toy(30, 1, 1);
        let tt = build(&p, &[(0, 0, 0), (1, 1, 3)]);
        assert_eq!(room_capacity_cost(&tt, &p, &SoftWeights::UNIT), 5);
        let p = toy(30, 2, 1);
        let tt = build(&p, &[(0, 0, 0), (0, 0, 1), (1, 1, 3)]);
        assert_eq!(room_capacity_cost(&tt, &p, &SoftWeights::UNIT), 10);
    }

    #[test]
    fn stability_counts_extra_rooms() {
        let p = toy(10, 3, 1);
        let tt = build(&p, &[(0, 0, 0), (0, 0, 1), (0, 0, 2), (1, 0, 3)]);
        assert_eq!(room_stability_cost(&tt, &p, &SoftWeights::UNIT), 0);
        let tt = build(&p, &[(0, 0, 0), (0, 1, 1), (0, 0, 2), (1, 0, 3)]);
        assert_eq!(room_stability_cost(&tt, &p, &SoftWeights::UNIT), 1);
        let tt = build(&p, &[(0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 3)]);
        assert_eq!(room_stability_cost(&tt, &p, &SoftWeights::UNIT), 2);
    }

    #[test]
    fn min_days_weighted() {
        let p = toy(10, 3, 2);
        let spread = build(&p, &[(0, 0, 0), (0, 0, 1), (0, 0, 3), (1, 1, 3)]);
        assert_eq!(
            min_working_days_cost(&spread, &p, &SoftWeights::default()),
            0
        );
        let one_day = build(&p, &[(0, 0, 0), (0, 0, 1), (0, 0, 2), (1, 1, 3)]);
        assert_eq!(
            min_working_days_cost(&one_day, &p, &SoftWeights::default()),
            5
        );
    }

    #[test]
    fn compactness_counts_isolated() {
        let p = toy(10, 2, 1);
        let adjacent = build(&p, &[(0, 0, 0), (0, 0, 1), (1, 1, 3)]);
        // only course b's lone lecture is isolated
        assert_eq!(
            curriculum_compactness_cost(&adjacent, &p, &SoftWeights::default()),
            2
        );
        let gap = build(&p, &[(0, 0, 0), (0, 0, 2), (1, 1, 3)]);
        assert_eq!(curriculum_compactness_cost(&gap, &p, &SoftWeights::UNIT), 3);
    }

    #[test]
    fn compactness_never_spans_days() {
        let p = toy(10, 2, 1);
        // periods 2 and 3 are the last of day 0 and the first of day 1
        let tt = build(&p, &[(0, 0, 2), (0, 0, 3), (1, 1, 0)]);
        assert_eq!(curriculum_compactness_cost(&tt, &p, &SoftWeights::UNIT), 3);
    }

    #[test]
    fn total_rejects_infeasible() {
        let p = toy(10, 2, 1);
        let tt = build(&p, &[(0, 0, 0)]);
        assert!(matches!(
            total_cost(&tt, &p, &SoftWeights::default()),
            Err(CostError::Infeasible(_))
        ));
    }

    #[test]
    fn total_sums_components() {
        let p = toy(30, 1, 1);
        let tt = build(&p, &[(0, 0, 0), (1, 1, 1)]);
        let w = SoftWeights::default();
        let b = total_cost(&tt, &p, &w).unwrap();
        assert_eq!(b.room_capacity, 5);
        assert_eq!(b.room_stability, 0);
        assert_eq!(b.min_working_days, 0);
        // one lecture per curriculum, each alone in its curriculum
        assert_eq!(b.curriculum_compactness, 4);
        assert_eq!(b.total, 9);
    }
}
