//! Random instance generator.
//!
//! Produces instances with prescribed dimensions, for tests, benchmarks and
//! experiments when the competition files are not at hand. Loads are capped
//! (teacher and curriculum lectures at most half the week, enough open
//! periods per course) so the results are feasible in practice, though not
//! guaranteed to be.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::{Course, Curriculum, Instance, Room, Unavailability};
use crate::rng::rng_from_seed;

/// Headline dimensions of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceShape {
    pub name: &'static str,
    pub courses: usize,
    pub lectures: usize,
    pub rooms: usize,
    pub periods_per_day: usize,
    pub days: usize,
    pub curricula: usize,
}

impl InstanceShape {
    pub const fn new(
        name: &'static str,
        courses: usize,
        lectures: usize,
        rooms: usize,
        periods_per_day: usize,
        days: usize,
        curricula: usize,
    ) -> Self {
        InstanceShape {
            name,
            courses,
            lectures,
            rooms,
            periods_per_day,
            days,
            curricula,
        }
    }

    pub fn of(inst: &Instance) -> (usize, usize, usize, usize, usize, usize) {
        (
            inst.courses.len(),
            inst.total_lectures(),
            inst.rooms.len(),
            inst.periods_per_day,
            inst.days,
            inst.curricula.len(),
        )
    }

    pub fn tuple(&self) -> (usize, usize, usize, usize, usize, usize) {
        (
            self.courses,
            self.lectures,
            self.rooms,
            self.periods_per_day,
            self.days,
            self.curricula,
        )
    }
}

/// Dimensions of the 21 ITC-2007 track-3 instances: courses, lectures,
/// rooms, periods per day, days, curricula.
pub const ITC2007_SHAPES: [InstanceShape; 21] = [
    InstanceShape::new("comp01", 30, 160, 6, 6, 5, 14),
    InstanceShape::new("comp02", 82, 283, 16, 5, 5, 70),
    InstanceShape::new("comp03", 72, 251, 16, 5, 5, 68),
    InstanceShape::new("comp04", 79, 286, 18, 5, 5, 57),
    InstanceShape::new("comp05", 54, 152, 9, 6, 6, 139),
    InstanceShape::new("comp06", 108, 361, 18, 5, 5, 70),
    InstanceShape::new("comp07", 131, 434, 20, 5, 5, 77),
    InstanceShape::new("comp08", 86, 324, 18, 5, 5, 61),
    InstanceShape::new("comp09", 76, 279, 18, 5, 5, 75),
    InstanceShape::new("comp10", 115, 370, 18, 5, 5, 67),
    InstanceShape::new("comp11", 30, 162, 5, 9, 5, 13),
    InstanceShape::new("comp12", 88, 218, 11, 6, 6, 150),
    InstanceShape::new("comp13", 82, 308, 19, 5, 5, 66),
    InstanceShape::new("comp14", 85, 275, 17, 5, 5, 60),
    InstanceShape::new("comp15", 72, 251, 16, 5, 5, 68),
    InstanceShape::new("comp16", 108, 366, 20, 5, 5, 71),
    InstanceShape::new("comp17", 99, 339, 17, 5, 5, 70),
    InstanceShape::new("comp18", 47, 138, 9, 6, 6, 52),
    InstanceShape::new("comp19", 74, 277, 16, 5, 5, 66),
    InstanceShape::new("comp20", 121, 390, 19, 5, 5, 78),
    InstanceShape::new("comp21", 94, 327, 18, 5, 5, 78),
];

pub fn itc2007_shape(name: &str) -> Option<InstanceShape> {
    ITC2007_SHAPES
        .iter()
        .copied()
        .find(|s| s.name.eq_ignore_ascii_case(name))
}

/// Generates an instance with exactly the given dimensions.
///
/// # Panics
/// If the shape cannot hold its lectures (`lectures < courses` or more
/// lectures than room-periods).
pub fn generate(shape: &InstanceShape, seed: u64) -> Instance {
    let periods = shape.days * shape.periods_per_day;
    assert!(
        shape.courses >= 1 && shape.lectures >= shape.courses,
        "every course needs a lecture"
    );
    assert!(
        shape.lectures <= periods * shape.rooms,
        "more lectures than room-periods"
    );
    let mut rng = rng_from_seed(seed);
    let half_week = (periods / 2).max(1);
    let per_course_cap = half_week.min(9).max(shape.lectures.div_ceil(shape.courses));

    let mut lectures = vec![1usize; shape.courses];
    for _ in shape.courses..shape.lectures {
        loop {
            let c = rng.gen_range(0..shape.courses);
            if lectures[c] < per_course_cap {
                lectures[c] += 1;
                break;
            }
        }
    }

    let capacities = [20usize, 30, 45, 60, 80, 100, 150, 200];
    let rooms: Vec<Room> = (0..shape.rooms)
        .map(|id| Room {
            id,
            name: format!("R{id:02}"),
            capacity: *capacities.choose(&mut rng).unwrap(),
        })
        .collect();
    let max_cap = rooms.iter().map(|r| r.capacity).max().unwrap();

    let mut teacher_load: Vec<usize> = Vec::new();
    let teacher_pool = (shape.courses * 4 / 5).max(1);
    let courses: Vec<Course> = (0..shape.courses)
        .map(|id| {
            let mut teacher = rng.gen_range(0..teacher_pool);
            if teacher_load.len() <= teacher {
                teacher_load.resize(teacher + 1, 0);
            }
            if teacher_load[teacher] + lectures[id] > half_week {
                teacher = teacher_load.len().max(teacher_pool);
                teacher_load.resize(teacher + 1, 0);
            }
            teacher_load[teacher] += lectures[id];
            let spread = lectures[id].min(shape.days);
            Course {
                id,
                name: format!("c{id:04}"),
                teacher: format!("t{teacher:03}"),
                lectures: lectures[id],
                min_working_days: rng.gen_range(1..=spread),
                students: rng.gen_range(5..=max_cap),
            }
        })
        .collect();

    let ids: Vec<usize> = (0..shape.courses).collect();
    let curricula: Vec<Curriculum> = (0..shape.curricula)
        .map(|id| {
            let mut members = vec![rng.gen_range(0..shape.courses)];
            for _ in 0..50 {
                let size = rng
                    .gen_range(2..=5usize.min(shape.courses).max(2))
                    .min(shape.courses);
                let pick: Vec<usize> = ids.choose_multiple(&mut rng, size).copied().collect();
                if pick.iter().map(|&c| lectures[c]).sum::<usize>() <= half_week {
                    members = pick;
                    break;
                }
            }
            members.sort_unstable();
            Curriculum {
                id,
                name: format!("q{id:03}"),
                courses: members,
            }
        })
        .collect();

    let mut unavailabilities = Vec::new();
    for c in &courses {
        let spare = periods.saturating_sub(c.lectures + periods / 4);
        let blocked = rng.gen_range(0..=(periods / 5).min(spare));
        let mut chosen: Vec<usize> = (0..periods)
            .collect::<Vec<_>>()
            .choose_multiple(&mut rng, blocked)
            .copied()
            .collect();
        chosen.sort_unstable();
        for p in chosen {
            unavailabilities.push(Unavailability {
                course: c.id,
                day: p / shape.periods_per_day,
                period: p % shape.periods_per_day,
            });
        }
    }

    Instance {
        name: format!("{}-gen{seed}", shape.name),
        days: shape.days,
        periods_per_day: shape.periods_per_day,
        courses,
        rooms,
        curricula,
        unavailabilities,
    }
}
