//! Solution files in the competition output format, one lecture per line:
//! `<CourseName> <RoomName> <Day> <Period>`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::problem::Problem;
use crate::timetable::{Assignment, Location, Timetable, TimetableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("line {line}: expected `<course> <room> <day> <period>`")]
    Malformed { line: usize },
    #[error("line {line}: unknown course `{name}`")]
    UnknownCourse { line: usize, name: String },
    #[error("line {line}: unknown room `{name}`")]
    UnknownRoom { line: usize, name: String },
    #[error("line {line}: day/period out of range")]
    OutOfRange { line: usize },
}

/// Writes lectures grouped by course, in course order then slot order.
pub fn write_solution(tt: &Timetable, problem: &Problem) -> String {
    let inst = &problem.instance;
    let dims = problem.dims;
    let mut out = String::new();
    for course in &inst.courses {
        let mut slots = tt.positions(course.id).to_vec();
        slots.sort_unstable();
        for slot in slots {
            let loc = dims.location(slot);
            let _ = writeln!(
                out,
                "{} {} {} {}",
                course.name, inst.rooms[loc.room].name, loc.day, loc.period
            );
        }
    }
    out
}

pub fn parse_solution(text: &str, problem: &Problem) -> Result<Vec<Assignment>, SolutionError> {
    let inst = &problem.instance;
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let [course, room, day, period] = toks[..] else {
            return Err(SolutionError::Malformed { line });
        };
        let course = inst
            .course_by_name(course)
            .ok_or_else(|| SolutionError::UnknownCourse {
                line,
                name: course.to_string(),
            })?;
        let room = inst
            .room_by_name(room)
            .ok_or_else(|| SolutionError::UnknownRoom {
                line,
                name: room.to_string(),
            })?;
        let day: usize = day.parse().map_err(|_| SolutionError::Malformed { line })?;
        let period: usize = period
            .parse()
            .map_err(|_| SolutionError::Malformed { line })?;
        let slot = problem
            .dims
            .slot_index(Location { room, day, period })
            .map_err(|_| SolutionError::OutOfRange { line })?;
        out.push(Assignment { course, slot });
    }
    Ok(out)
}

/// Rebuilds a timetable from placements that are hard-feasible as a set.
pub fn to_timetable(
    problem: &Problem,
    assignments: &[Assignment],
) -> Result<Timetable, TimetableError> {
    let mut tt = Timetable::new(problem);
    for a in assignments {
        tt.place(problem, a.course, a.slot)?;
    }
    Ok(tt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    fn problem() -> Problem {
        Problem::new(
            parse_instance(
                "Name: S\nCourses: 2\nRooms: 2\nDays: 2\nPeriods_per_day: 2\nCurricula: 0\nConstraints: 0\n\
                 COURSES:\nalg t1 2 1 5\nbio t2 1 1 5\nROOMS:\nA 5\nB 5\nCURRICULA:\n\
                 UNAVAILABILITY_CONSTRAINTS:\nEND.\n",
            )
            .unwrap(),
        )
    }

    #[test]
    fn writes_and_reads_back() {
        let p = problem();
        let mut tt = Timetable::new(&p);
        tt.place(&p, 0, p.dims.slot(1, 3)).unwrap();
        tt.place(&p, 0, p.dims.slot(0, 0)).unwrap();
        tt.place(&p, 1, p.dims.slot(0, 1)).unwrap();
        let text = write_solution(&tt, &p);
        assert_eq!(text, "alg A 0 0\nalg B 1 1\nbio A 0 1\n");
        let back = to_timetable(&p, &parse_solution(&text, &p).unwrap()).unwrap();
        assert_eq!(back, tt);
    }

    #[test]
    fn unknown_names_rejected() {
        let p = problem();
        assert_eq!(
            parse_solution("alg A 0 0\nchem A 0 1\n", &p),
            Err(SolutionError::UnknownCourse {
                line: 2,
                name: "chem".into()
            })
        );
        assert_eq!(
            parse_solution("alg Z 0 0\n", &p),
            Err(SolutionError::UnknownRoom {
                line: 1,
                name: "Z".into()
            })
        );
    }

    #[test]
    fn malformed_and_out_of_range() {
        let p = problem();
        assert_eq!(
            parse_solution("alg A 0\n", &p),
            Err(SolutionError::Malformed { line: 1 })
        );
        assert_eq!(
            parse_solution("alg A 2 0\n", &p),
            Err(SolutionError::OutOfRange { line: 1 })
        );
    }
}
