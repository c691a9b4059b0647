//! Precomputed course/period/room lookup tables.

use std::collections::HashMap;

use crate::instance::{CourseId, Instance};

/// Dense lookup tables consulted by every later phase.
///
/// `period_room_avail` is indexed by flat slot index (see [`crate::timetable::Dims`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrices {
    courses: usize,
    periods: usize,
    rooms: usize,
    conflict: Vec<u32>,
    period_unavail: Vec<bool>,
    room_compat: Vec<bool>,
    period_room_avail: Vec<bool>,
}

impl Matrices {
    /// Shared-curriculum count between two courses, plus one when they have the
    /// same teacher. Zero on the diagonal.
    pub fn conflict(&self, a: CourseId, b: CourseId) -> u32 {
        self.conflict[a * self.courses + b]
    }

    pub fn conflicts(&self, a: CourseId, b: CourseId) -> bool {
        self.conflict(a, b) > 0
    }

    /// True when `course` may not be taught in `period`.
    pub fn unavailable(&self, course: CourseId, period: usize) -> bool {
        self.period_unavail[course * self.periods + period]
    }

    pub fn room_compatible(&self, course: CourseId, room: usize) -> bool {
        self.room_compat[course * self.rooms + room]
    }

    pub fn slot_available(&self, course: CourseId, slot: usize) -> bool {
        self.period_room_avail[course * self.periods * self.rooms + slot]
    }

    /// Weighted conflict degree: sum of the course's conflict row.
    pub fn conflict_degree(&self, course: CourseId) -> u32 {
        let row = &self.conflict[course * self.courses..(course + 1) * self.courses];
        row.iter().sum()
    }

    /// Number of periods in which the course is not marked unavailable.
    pub fn available_periods(&self, course: CourseId) -> usize {
        (0..self.periods)
            .filter(|&p| !self.unavailable(course, p))
            .count()
    }
}

pub fn build_matrices(inst: &Instance) -> Matrices {
    let courses = inst.courses.len();
    let periods = inst.periods();
    let rooms = inst.num_rooms();

    let mut conflict = vec![0u32; courses * courses];
    for q in &inst.curricula {
        for (i, &a) in q.courses.iter().enumerate() {
            for &b in &q.courses[i + 1..] {
                conflict[a * courses + b] += 1;
                conflict[b * courses + a] += 1;
            }
        }
    }
    let mut by_teacher: HashMap<&str, Vec<CourseId>> = HashMap::new();
    for c in &inst.courses {
        by_teacher.entry(c.teacher.as_str()).or_default().push(c.id);
    }
    for group in by_teacher.values() {
        for (i, &a) in group.iter().enumerate() {
            for &b in &group[i + 1..] {
                conflict[a * courses + b] += 1;
                conflict[b * courses + a] += 1;
            }
        }
    }

    let mut period_unavail = vec![false; courses * periods];
    for u in &inst.unavailabilities {
        period_unavail[u.course * periods + u.day * inst.periods_per_day + u.period] = true;
    }

    // The instance format carries no room features, so every room suits every course.
    let room_compat = vec![true; courses * rooms];

    let mut period_room_avail = vec![false; courses * periods * rooms];
    for c in 0..courses {
        for r in 0..rooms {
            for p in 0..periods {
                period_room_avail[c * periods * rooms + r * periods + p] =
                    !period_unavail[c * periods + p] && room_compat[c * rooms + r];
            }
        }
    }

    Matrices {
        courses,
        periods,
        rooms,
        conflict,
        period_unavail,
        room_compat,
        period_room_avail,
    }
}
