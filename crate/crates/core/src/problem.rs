use std::collections::HashMap;

use crate::instance::{CourseId, Instance};
use crate::matrices::{build_matrices, Matrices};
use crate::timetable::Dims;

/// An instance together with its matrices and the id tables the timetable
/// needs for constant-time conflict checks. Immutable once built.
#[derive(Debug, Clone)]
pub struct Problem {
    pub instance: Instance,
    pub matrices: Matrices,
    pub dims: Dims,
    teacher_of: Vec<usize>,
    num_teachers: usize,
    course_curricula: Vec<Vec<usize>>,
}

impl Problem {
    pub fn new(instance: Instance) -> Self {
        let matrices = build_matrices(&instance);
        let dims = Dims::new(
            instance.days,
            instance.periods_per_day,
            instance.num_rooms(),
        );
        let mut teacher_ids: HashMap<&str, usize> = HashMap::new();
        let teacher_of = instance
            .courses
            .iter()
            .map(|c| {
                let next = teacher_ids.len();
                *teacher_ids.entry(c.teacher.as_str()).or_insert(next)
            })
            .collect();
        let num_teachers = teacher_ids.len();
        let mut course_curricula = vec![Vec::new(); instance.courses.len()];
        for q in &instance.curricula {
            for &c in &q.courses {
                course_curricula[c].push(q.id);
            }
        }
        Problem {
            instance,
            matrices,
            dims,
            teacher_of,
            num_teachers,
            course_curricula,
        }
    }

    pub fn num_courses(&self) -> usize {
        self.instance.courses.len()
    }

    pub fn num_curricula(&self) -> usize {
        self.instance.curricula.len()
    }

    pub fn num_teachers(&self) -> usize {
        self.num_teachers
    }

    pub fn teacher_of(&self, course: CourseId) -> usize {
        self.teacher_of[course]
    }

    pub fn curricula_of(&self, course: CourseId) -> &[usize] {
        &self.course_curricula[course]
    }

    pub fn lectures(&self, course: CourseId) -> usize {
        self.instance.courses[course].lectures
    }

    pub fn total_lectures(&self) -> usize {
        self.instance.total_lectures()
    }
}
