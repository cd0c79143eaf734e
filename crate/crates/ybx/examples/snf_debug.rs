use ybx::snf::{smith_normal_form, IntegerMatrix};

fn main() {
    let rows: Vec<Vec<i64>> = vec![
        vec![2, 2, 0, -1, -3, -2, -4],
        vec![-3, 2, -3, -1, -1, 1, -3],
        vec![-1, -4, -3, 0, 0, 2, 5],
        vec![-5, 5, -3, -4, -4, 2, 3],
        vec![-3, 4, -1, 3, 1, 1, 5],
        vec![1, 1, 2, 3, 0, -4, 4],
        vec![0, 1, 2, 4, 1, 0, -1],
        vec![5, -4, 0, -4, 5, -2, 3],
    ];
    let m = IntegerMatrix::from_rows(&rows);
    let d = smith_normal_form(&m);
    println!("{d:?}");
}
