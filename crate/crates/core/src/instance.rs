//! Problem description for curriculum-based course timetabling and a reader
//! for the ITC-2007 track-3 `.ctt` text format.
//!
//! Every entity gets a dense 0-based id in file order. Names are kept only for
//! reporting and for writing solutions back out.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

pub type CourseId = usize;
pub type RoomId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Course {
    pub id: CourseId,
    pub name: String,
    pub teacher: String,
    pub lectures: usize,
    pub min_working_days: usize,
    pub students: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Room {
    pub id: RoomId,
    pub name: String,
    pub capacity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curriculum {
    pub id: usize,
    pub name: String,
    pub courses: Vec<CourseId>,
}

/// A period in which a course cannot be taught.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Unavailability {
    pub course: CourseId,
    pub day: usize,
    pub period: usize,
}

/// Immutable problem description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub days: usize,
    pub periods_per_day: usize,
    pub courses: Vec<Course>,
    pub rooms: Vec<Room>,
    pub curricula: Vec<Curriculum>,
    pub unavailabilities: Vec<Unavailability>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input, expected {0}")]
    Truncated(&'static str),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("malformed {section} entry: {detail}")]
    Entry {
        section: &'static str,
        detail: String,
    },
    #[error("unknown course `{0}`")]
    UnknownCourse(String),
    #[error("duplicate course `{0}`")]
    DuplicateCourse(String),
    #[error("duplicate room `{0}`")]
    DuplicateRoom(String),
    #[error("duplicate curriculum `{0}`")]
    DuplicateCurriculum(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl Instance {
    pub fn periods(&self) -> usize {
        self.days * self.periods_per_day
    }

    pub fn num_rooms(&self) -> usize {
        self.rooms.len()
    }

    pub fn num_slots(&self) -> usize {
        self.periods() * self.rooms.len()
    }

    pub fn total_lectures(&self) -> usize {
        self.courses.iter().map(|c| c.lectures).sum()
    }

    pub fn course_by_name(&self, name: &str) -> Option<CourseId> {
        self.courses.iter().position(|c| c.name == name)
    }

    pub fn room_by_name(&self, name: &str) -> Option<RoomId> {
        self.rooms.iter().position(|r| r.name == name)
    }

    /// Checks the structural invariants that do not depend on file layout.
    pub fn check(&self) -> Result<(), String> {
        if self.days == 0 || self.periods_per_day == 0 || self.rooms.is_empty() {
            return Err("days, periods per day and rooms must all be at least 1".into());
        }
        for c in &self.courses {
            if c.lectures == 0 {
                return Err(format!("course {} has no lectures", c.name));
            }
            if c.min_working_days == 0 || c.min_working_days > self.days {
                return Err(format!(
                    "course {} has min working days {} outside 1..={}",
                    c.name, c.min_working_days, self.days
                ));
            }
        }
        for q in &self.curricula {
            if q.courses.is_empty() {
                return Err(format!("curriculum {} is empty", q.name));
            }
            let unique: HashSet<_> = q.courses.iter().collect();
            if unique.len() != q.courses.len() {
                return Err(format!("curriculum {} lists a course twice", q.name));
            }
            if q.courses.iter().any(|&c| c >= self.courses.len()) {
                return Err(format!(
                    "curriculum {} references an unknown course",
                    q.name
                ));
            }
        }
        for u in &self.unavailabilities {
            if u.course >= self.courses.len()
                || u.day >= self.days
                || u.period >= self.periods_per_day
            {
                return Err(format!("unavailability {:?} out of range", u));
            }
        }
        if self.total_lectures() > self.num_slots() {
            return Err(format!(
                "{} lectures cannot fit into {} room-periods",
                self.total_lectures(),
                self.num_slots()
            ));
        }
        Ok(())
    }

    /// Writes the instance back in `.ctt` form.
    pub fn to_ctt(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Name: {}", self.name);
        let _ = writeln!(out, "Courses: {}", self.courses.len());
        let _ = writeln!(out, "Rooms: {}", self.rooms.len());
        let _ = writeln!(out, "Days: {}", self.days);
        let _ = writeln!(out, "Periods_per_day: {}", self.periods_per_day);
        let _ = writeln!(out, "Curricula: {}", self.curricula.len());
        let _ = writeln!(out, "Constraints: {}", self.unavailabilities.len());
        out.push_str("\nCOURSES:\n");
        for c in &self.courses {
            let _ = writeln!(
                out,
                "{} {} {} {} {}",
                c.name, c.teacher, c.lectures, c.min_working_days, c.students
            );
        }
        out.push_str("\nROOMS:\n");
        for r in &self.rooms {
            let _ = writeln!(out, "{}\t{}", r.name, r.capacity);
        }
        out.push_str("\nCURRICULA:\n");
        for q in &self.curricula {
            let _ = write!(out, "{}  {} ", q.name, q.courses.len());
            let names: Vec<&str> = q
                .courses
                .iter()
                .map(|&c| self.courses[c].name.as_str())
                .collect();
            let _ = writeln!(out, "{}", names.join(" "));
        }
        out.push_str("\nUNAVAILABILITY_CONSTRAINTS:\n");
        for u in &self.unavailabilities {
            let _ = writeln!(
                out,
                "{} {} {}",
                self.courses[u.course].name, u.day, u.period
            );
        }
        out.push_str("\nEND.\n");
        out
    }
}

/// Line-aware token stream over the input; blank lines are skipped.
struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate().peekable(),
            last_line: 0,
        }
    }

    fn next_nonblank(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        for (idx, line) in self.inner.by_ref() {
            let trimmed = line.trim();
            if !trimmed.is_empty() {
                self.last_line = idx + 1;
                return Ok((idx + 1, trimmed));
            }
        }
        Err(ParseError {
            line: self.last_line + 1,
            kind: ParseErrorKind::Truncated(what),
        })
    }
}

fn header_value(lines: &mut Lines<'_>, key: &'static str) -> Result<(usize, String), ParseError> {
    let (line, text) = lines.next_nonblank(key)?;
    let (k, v) = text.split_once(':').ok_or_else(|| ParseError {
        line,
        kind: ParseErrorKind::Header(format!("expected `{key}:`, found `{text}`")),
    })?;
    if k.trim() != key {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Header(format!("expected `{key}:`, found `{}:`", k.trim())),
        });
    }
    Ok((line, v.trim().to_string()))
}

fn header_count(lines: &mut Lines<'_>, key: &'static str) -> Result<usize, ParseError> {
    let (line, v) = header_value(lines, key)?;
    v.parse().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::Header(format!("`{key}` value `{v}` is not a count")),
    })
}

fn expect_section(lines: &mut Lines<'_>, marker: &'static str) -> Result<(), ParseError> {
    let (line, text) = lines.next_nonblank(marker)?;
    if text != marker {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Header(format!("expected `{marker}`, found `{text}`")),
        });
    }
    Ok(())
}

fn number(line: usize, section: &'static str, token: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::Entry {
            section,
            detail: format!("`{token}` is not a count"),
        },
    })
}

fn fields<'a>(
    line: usize,
    section: &'static str,
    text: &'a str,
    min: usize,
) -> Result<Vec<&'a str>, ParseError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() < min {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Entry {
                section,
                detail: format!("expected at least {min} fields, found {}", toks.len()),
            },
        });
    }
    Ok(toks)
}

/// Parses the contents of an ITC-2007 `.ctt` file.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines::new(text);
    let (_, name) = header_value(&mut lines, "Name")?;
    let n_courses = header_count(&mut lines, "Courses")?;
    let n_rooms = header_count(&mut lines, "Rooms")?;
    let days = header_count(&mut lines, "Days")?;
    let periods_per_day = header_count(&mut lines, "Periods_per_day")?;
    let n_curricula = header_count(&mut lines, "Curricula")?;
    let n_constraints = header_count(&mut lines, "Constraints")?;

    expect_section(&mut lines, "COURSES:")?;
    let mut courses = Vec::with_capacity(n_courses);
    let mut course_ids: HashMap<String, CourseId> = HashMap::with_capacity(n_courses);
    for id in 0..n_courses {
        let (line, text) = lines.next_nonblank("course entry")?;
        let t = fields(line, "COURSES", text, 5)?;
        if course_ids.insert(t[0].to_string(), id).is_some() {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::DuplicateCourse(t[0].into()),
            });
        }
        courses.push(Course {
            id,
            name: t[0].to_string(),
            teacher: t[1].to_string(),
            lectures: number(line, "COURSES", t[2])?,
            min_working_days: number(line, "COURSES", t[3])?,
            students: number(line, "COURSES", t[4])?,
        });
    }

    expect_section(&mut lines, "ROOMS:")?;
    let mut rooms = Vec::with_capacity(n_rooms);
    let mut room_names = HashSet::with_capacity(n_rooms);
    for id in 0..n_rooms {
        let (line, text) = lines.next_nonblank("room entry")?;
        let t = fields(line, "ROOMS", text, 2)?;
        if !room_names.insert(t[0].to_string()) {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::DuplicateRoom(t[0].into()),
            });
        }
        rooms.push(Room {
            id,
            name: t[0].to_string(),
            capacity: number(line, "ROOMS", t[1])?,
        });
    }

    expect_section(&mut lines, "CURRICULA:")?;
    let mut curricula = Vec::with_capacity(n_curricula);
    let mut curriculum_names = HashSet::with_capacity(n_curricula);
    for id in 0..n_curricula {
        let (line, text) = lines.next_nonblank("curriculum entry")?;
        let t = fields(line, "CURRICULA", text, 2)?;
        let count = number(line, "CURRICULA", t[1])?;
        if t.len() != 2 + count {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::Entry {
                    section: "CURRICULA",
                    detail: format!("declares {count} courses but lists {}", t.len() - 2),
                },
            });
        }
        if !curriculum_names.insert(t[0].to_string()) {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::DuplicateCurriculum(t[0].into()),
            });
        }
        let members = t[2..]
            .iter()
            .map(|&c| {
                course_ids.get(c).copied().ok_or_else(|| ParseError {
                    line,
                    kind: ParseErrorKind::UnknownCourse(c.into()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        curricula.push(Curriculum {
            id,
            name: t[0].to_string(),
            courses: members,
        });
    }

    expect_section(&mut lines, "UNAVAILABILITY_CONSTRAINTS:")?;
    let mut unavailabilities = Vec::with_capacity(n_constraints);
    for _ in 0..n_constraints {
        let (line, text) = lines.next_nonblank("unavailability entry")?;
        let t = fields(line, "UNAVAILABILITY_CONSTRAINTS", text, 3)?;
        let course = *course_ids.get(t[0]).ok_or_else(|| ParseError {
            line,
            kind: ParseErrorKind::UnknownCourse(t[0].into()),
        })?;
        unavailabilities.push(Unavailability {
            course,
            day: number(line, "UNAVAILABILITY_CONSTRAINTS", t[1])?,
            period: number(line, "UNAVAILABILITY_CONSTRAINTS", t[2])?,
        });
    }

    let (line, text) = lines.next_nonblank("END.")?;
    if text != "END." {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Header(format!("expected `END.`, found `{text}`")),
        });
    }

    let instance = Instance {
        name,
        days,
        periods_per_day,
        courses,
        rooms,
        curricula,
        unavailabilities,
    };
    instance.check().map_err(|msg| ParseError {
        line,
        kind: ParseErrorKind::Invalid(msg),
    })?;
    Ok(instance)
}
