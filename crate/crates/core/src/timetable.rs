//! Flat slot-vector solution encoding and hard-constraint checks.
//!
//! A timetable is a vector of `days * periods_per_day * rooms` entries, room
//! major: the first room's entries enumerate every period of the week, then
//! the second room's, and so on. Each entry holds a course id or [`EMPTY`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::instance::CourseId;
use crate::problem::Problem;

pub const EMPTY: i32 = -1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Location {
    pub room: usize,
    pub day: usize,
    pub period: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub days: usize,
    pub periods_per_day: usize,
    pub rooms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TimetableError {
    #[error("location {0:?} is outside the timetable")]
    OutOfBounds(Location),
    #[error("slot {0} is already occupied")]
    Occupied(usize),
    #[error("slot {0} is empty")]
    Empty(usize),
    #[error("course {course} cannot be placed at slot {slot}")]
    Infeasible { course: CourseId, slot: usize },
}

impl Dims {
    pub fn new(days: usize, periods_per_day: usize, rooms: usize) -> Self {
        Dims {
            days,
            periods_per_day,
            rooms,
        }
    }

    /// Number of (day, timeslot) periods in the week.
    pub fn periods(&self) -> usize {
        self.days * self.periods_per_day
    }

    pub fn slots(&self) -> usize {
        self.periods() * self.rooms
    }

    pub fn slot_index(&self, loc: Location) -> Result<usize, TimetableError> {
        if loc.room >= self.rooms || loc.day >= self.days || loc.period >= self.periods_per_day {
            return Err(TimetableError::OutOfBounds(loc));
        }
        Ok(loc.room * self.periods() + loc.day * self.periods_per_day + loc.period)
    }

    pub fn location(&self, slot: usize) -> Location {
        let period = self.period_of(slot);
        Location {
            room: self.room_of(slot),
            day: period / self.periods_per_day,
            period: period % self.periods_per_day,
        }
    }

    /// Week-level period index (`day * periods_per_day + timeslot`).
    #[inline]
    pub fn period_of(&self, slot: usize) -> usize {
        slot % self.periods()
    }

    #[inline]
    pub fn room_of(&self, slot: usize) -> usize {
        slot / self.periods()
    }

    #[inline]
    pub fn slot(&self, room: usize, period: usize) -> usize {
        room * self.periods() + period
    }

    pub fn day_of_period(&self, period: usize) -> usize {
        period / self.periods_per_day
    }
}

/// One lecture placement. Used by the validator, which must also cope with
/// inputs the slot vector cannot represent (two lectures in one room).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub course: CourseId,
    pub slot: usize,
}

/// A candidate solution with occupancy counters kept in step with the slots.
#[derive(Debug, Clone)]
pub struct Timetable {
    dims: Dims,
    slots: Vec<i32>,
    positions: Vec<Vec<usize>>,
    course_period: Vec<u16>,
    teacher_period: Vec<u16>,
    curriculum_period: Vec<u16>,
    num_courses: usize,
    num_teachers: usize,
    num_curricula: usize,
}

impl PartialEq for Timetable {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.slots == other.slots
    }
}

impl Eq for Timetable {}

impl Timetable {
    pub fn new(problem: &Problem) -> Self {
        let dims = problem.dims;
        let periods = dims.periods();
        Timetable {
            dims,
            slots: vec![EMPTY; dims.slots()],
            positions: vec![Vec::new(); problem.num_courses()],
            course_period: vec![0; periods * problem.num_courses()],
            teacher_period: vec![0; periods * problem.num_teachers()],
            curriculum_period: vec![0; periods * problem.num_curricula()],
            num_courses: problem.num_courses(),
            num_teachers: problem.num_teachers(),
            num_curricula: problem.num_curricula(),
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    /// Raw slot vector, [`EMPTY`] marking free slots.
    pub fn slots(&self) -> &[i32] {
        &self.slots
    }

    #[inline]
    pub fn course_at(&self, slot: usize) -> Option<CourseId> {
        let v = self.slots[slot];
        (v != EMPTY).then_some(v as CourseId)
    }

    /// Slots currently holding a lecture of `course`.
    pub fn positions(&self, course: CourseId) -> &[usize] {
        &self.positions[course]
    }

    pub fn scheduled(&self, course: CourseId) -> usize {
        self.positions[course].len()
    }

    pub fn lecture_count(&self) -> usize {
        self.positions.iter().map(Vec::len).sum()
    }

    pub fn is_complete(&self, problem: &Problem) -> bool {
        (0..self.num_courses).all(|c| self.scheduled(c) == problem.lectures(c))
    }

    /// Occupied slots in ascending order with their course.
    pub fn events(&self) -> impl Iterator<Item = (usize, CourseId)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != EMPTY)
            .map(|(s, &v)| (s, v as CourseId))
    }

    pub fn assignments(&self) -> Vec<Assignment> {
        self.events()
            .map(|(slot, course)| Assignment { course, slot })
            .collect()
    }

    /// Whether a lecture of `course` anywhere in `period` would clash with the
    /// current contents of that period: same course (distinct periods), shared
    /// teacher or shared curriculum, or the course is unavailable then.
    pub fn period_blocked(&self, problem: &Problem, course: CourseId, period: usize) -> bool {
        if problem.matrices.unavailable(course, period) {
            return true;
        }
        if self.course_period[period * self.num_courses + course] > 0 {
            return true;
        }
        if self.teacher_period[period * self.num_teachers + problem.teacher_of(course)] > 0 {
            return true;
        }
        problem
            .curricula_of(course)
            .iter()
            .any(|&q| self.curriculum_period[period * self.num_curricula + q] > 0)
    }

    pub fn is_feasible_placement(&self, problem: &Problem, course: CourseId, slot: usize) -> bool {
        self.slots[slot] == EMPTY
            && problem.matrices.slot_available(course, slot)
            && !self.period_blocked(problem, course, self.dims.period_of(slot))
    }

    /// Places a lecture; fails unless [`Self::is_feasible_placement`] holds.
    pub fn place(
        &mut self,
        problem: &Problem,
        course: CourseId,
        slot: usize,
    ) -> Result<(), TimetableError> {
        if self.slots[slot] != EMPTY {
            return Err(TimetableError::Occupied(slot));
        }
        if !self.is_feasible_placement(problem, course, slot) {
            return Err(TimetableError::Infeasible { course, slot });
        }
        self.place_unchecked(problem, course, slot);
        Ok(())
    }

    pub(crate) fn place_unchecked(&mut self, problem: &Problem, course: CourseId, slot: usize) {
        debug_assert_eq!(self.slots[slot], EMPTY);
        let period = self.dims.period_of(slot);
        self.slots[slot] = course as i32;
        self.positions[course].push(slot);
        self.course_period[period * self.num_courses + course] += 1;
        self.teacher_period[period * self.num_teachers + problem.teacher_of(course)] += 1;
        for &q in problem.curricula_of(course) {
            self.curriculum_period[period * self.num_curricula + q] += 1;
        }
    }

    /// Clears a slot and returns the course that held it.
    pub fn remove(&mut self, problem: &Problem, slot: usize) -> Result<CourseId, TimetableError> {
        let course = self.course_at(slot).ok_or(TimetableError::Empty(slot))?;
        let period = self.dims.period_of(slot);
        self.slots[slot] = EMPTY;
        let pos = &mut self.positions[course];
        let i = pos
            .iter()
            .position(|&s| s == slot)
            .expect("position index out of sync");
        pos.swap_remove(i);
        self.course_period[period * self.num_courses + course] -= 1;
        self.teacher_period[period * self.num_teachers + problem.teacher_of(course)] -= 1;
        for &q in problem.curricula_of(course) {
            self.curriculum_period[period * self.num_curricula + q] -= 1;
        }
        Ok(course)
    }

    /// Removes every lecture in `removals`, then places `placements` in order.
    /// If any placement is infeasible the timetable is restored and `false`
    /// returned.
    pub(crate) fn try_relocate(
        &mut self,
        problem: &Problem,
        removals: &[usize],
        placements: &[(CourseId, usize)],
    ) -> bool {
        let removed: Vec<(CourseId, usize)> = removals
            .iter()
            .map(|&s| {
                (
                    self.remove(problem, s).expect("relocating an empty slot"),
                    s,
                )
            })
            .collect();
        for (done, &(course, slot)) in placements.iter().enumerate() {
            if !self.is_feasible_placement(problem, course, slot) {
                for &(_, s) in &placements[..done] {
                    self.remove(problem, s).expect("rollback");
                }
                for &(c, s) in &removed {
                    self.place_unchecked(problem, c, s);
                }
                return false;
            }
            self.place_unchecked(problem, course, slot);
        }
        true
    }
}

/// A hard-constraint breach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// H1: wrong number of lectures scheduled.
    Lectures {
        course: CourseId,
        expected: usize,
        scheduled: usize,
    },
    /// H1: two lectures of one course share a period.
    SamePeriod {
        course: CourseId,
        period: usize,
        slots: Vec<usize>,
    },
    /// H2: more than one lecture in a room at once.
    RoomOccupancy { slot: usize, courses: Vec<CourseId> },
    /// H3: two conflicting courses share a period.
    Conflict {
        courses: (CourseId, CourseId),
        period: usize,
    },
    /// H4: lecture in a period the course is unavailable.
    Availability { course: CourseId, slot: usize },
    /// H4: lecture in a room unsuited to the course.
    RoomUnsuitable { course: CourseId, slot: usize },
}

impl Violation {
    pub fn constraint(&self) -> &'static str {
        match self {
            Violation::Lectures { .. } | Violation::SamePeriod { .. } => "H1",
            Violation::RoomOccupancy { .. } => "H2",
            Violation::Conflict { .. } => "H3",
            Violation::Availability { .. } | Violation::RoomUnsuitable { .. } => "H4",
        }
    }

    /// Like the `Display` form but with course and room names and
    /// day/period coordinates.
    pub fn describe(&self, problem: &Problem) -> String {
        let inst = &problem.instance;
        let dims = problem.dims;
        let course = |c: CourseId| inst.courses[c].name.as_str();
        let at = |slot: usize| {
            let loc = dims.location(slot);
            format!(
                "room {} day {} period {}",
                inst.rooms[loc.room].name, loc.day, loc.period
            )
        };
        let period = |p: usize| {
            format!(
                "day {} period {}",
                p / dims.periods_per_day,
                p % dims.periods_per_day
            )
        };
        let body = match self {
            Violation::Lectures {
                course: c,
                expected,
                scheduled,
            } => {
                format!(
                    "{}: {scheduled} lectures scheduled, {expected} required",
                    course(*c)
                )
            }
            Violation::SamePeriod {
                course: c,
                period: p,
                slots,
            } => {
                format!("{}: {} lectures at {}", course(*c), slots.len(), period(*p))
            }
            Violation::RoomOccupancy { slot, courses } => {
                let names: Vec<&str> = courses.iter().map(|&c| course(c)).collect();
                format!("{} holds {}", at(*slot), names.join(", "))
            }
            Violation::Conflict {
                courses: (a, b),
                period: p,
            } => {
                format!(
                    "{} and {} conflict at {}",
                    course(*a),
                    course(*b),
                    period(*p)
                )
            }
            Violation::Availability { course: c, slot } => {
                format!("{} unavailable at {}", course(*c), at(*slot))
            }
            Violation::RoomUnsuitable { course: c, slot } => {
                format!("{} unsuited to {}", course(*c), at(*slot))
            }
        };
        format!("{} {body}", self.constraint())
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.constraint())?;
        match self {
            Violation::Lectures {
                course,
                expected,
                scheduled,
            } => {
                write!(
                    f,
                    "course {course}: {scheduled} lectures scheduled, {expected} required"
                )
            }
            Violation::SamePeriod {
                course,
                period,
                slots,
            } => {
                write!(
                    f,
                    "course {course}: {} lectures in period {period} (slots {slots:?})",
                    slots.len()
                )
            }
            Violation::RoomOccupancy { slot, courses } => {
                write!(f, "slot {slot}: occupied by courses {courses:?}")
            }
            Violation::Conflict {
                courses: (a, b),
                period,
            } => {
                write!(f, "courses {a} and {b} conflict in period {period}")
            }
            Violation::Availability { course, slot } => {
                write!(f, "course {course} unavailable at slot {slot}")
            }
            Violation::RoomUnsuitable { course, slot } => {
                write!(f, "course {course} unsuitable for the room of slot {slot}")
            }
        }
    }
}

/// Full-rescan hard-constraint check over an arbitrary list of placements.
pub fn validate_assignments(problem: &Problem, assignments: &[Assignment]) -> Vec<Violation> {
    let dims = problem.dims;
    let m = &problem.matrices;
    let mut violations = Vec::new();

    let mut per_course = vec![0usize; problem.num_courses()];
    for a in assignments {
        per_course[a.course] += 1;
    }
    for (course, &scheduled) in per_course.iter().enumerate() {
        let expected = problem.lectures(course);
        if scheduled != expected {
            violations.push(Violation::Lectures {
                course,
                expected,
                scheduled,
            });
        }
    }

    let mut by_slot: BTreeMap<usize, Vec<CourseId>> = BTreeMap::new();
    for a in assignments {
        by_slot.entry(a.slot).or_default().push(a.course);
    }
    for (&slot, courses) in &by_slot {
        if courses.len() > 1 {
            violations.push(Violation::RoomOccupancy {
                slot,
                courses: courses.clone(),
            });
        }
    }

    let mut by_period: BTreeMap<usize, Vec<Assignment>> = BTreeMap::new();
    for a in assignments {
        by_period
            .entry(dims.period_of(a.slot))
            .or_default()
            .push(*a);
    }
    for (&period, items) in &by_period {
        let mut same: HashMap<CourseId, Vec<usize>> = HashMap::new();
        for a in items {
            same.entry(a.course).or_default().push(a.slot);
        }
        let mut repeated: Vec<_> = same.into_iter().filter(|(_, s)| s.len() > 1).collect();
        repeated.sort();
        for (course, slots) in repeated {
            violations.push(Violation::SamePeriod {
                course,
                period,
                slots,
            });
        }
        let mut courses: Vec<CourseId> = items.iter().map(|a| a.course).collect();
        courses.sort_unstable();
        courses.dedup();
        for (i, &a) in courses.iter().enumerate() {
            for &b in &courses[i + 1..] {
                if m.conflicts(a, b) {
                    violations.push(Violation::Conflict {
                        courses: (a, b),
                        period,
                    });
                }
            }
        }
    }

    for a in assignments {
        if m.unavailable(a.course, dims.period_of(a.slot)) {
            violations.push(Violation::Availability {
                course: a.course,
                slot: a.slot,
            });
        }
        if !m.room_compatible(a.course, dims.room_of(a.slot)) {
            violations.push(Violation::RoomUnsuitable {
                course: a.course,
                slot: a.slot,
            });
        }
    }
    violations
}

/// Hard-constraint violations of a timetable; empty iff H1 to H4 all hold.
pub fn validate_hard(tt: &Timetable, problem: &Problem) -> Vec<Violation> {
    validate_assignments(problem, &tt.assignments())
}
