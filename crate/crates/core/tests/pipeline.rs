use curvecount::rational::{int, ratio};
use curvecount::tables::{GvTable, PtTable};
use curvecount::transforms;

fn quintic_low_degree() -> GvTable {
    GvTable::read_csv("g,d,value\n0,1,2875\n0,2,609250\n0,3,317206375\n1,3,609250\n".as_bytes(), Some(2), Some(3))
        .unwrap()
}

#[test]
fn quintic_gw_values_are_frozen() {
    let gw = transforms::gv_to_gw(&quintic_low_degree(), 2, 3).unwrap();
    assert_eq!(gw.get(0, 2), Some(ratio(4876875, 8)));
    assert_eq!(gw.get(1, 1), Some(ratio(2875, 12)));
    assert_eq!(gw.get(1, 2), Some(ratio(609250, 12) + ratio(2875, 24)));
    assert_eq!(gw.get(2, 1), Some(ratio(2875, 240)));
}

#[test]
fn tables_survive_csv_and_json() {
    let gv = quintic_low_degree();
    let csv = gv.to_csv_string();
    assert_eq!(GvTable::read_csv(csv.as_bytes(), Some(2), Some(3)).unwrap(), gv);
    assert_eq!(GvTable::from_json(&gv.to_json()).unwrap(), gv);
}

#[test]
fn pt_table_round_trips_through_connected_series() {
    let mut gv = quintic_low_degree();
    gv.set_genus_complete(true);
    let f = transforms::gv_to_pt_connected(&gv, 3, (-4, 8)).unwrap();
    let pt: PtTable = transforms::pt_connected_to_table(&f).unwrap();
    assert_eq!(pt.get(1, 1), Some(int(2875)));
    assert_eq!(pt.get(2, 1), Some(int(-5750)));
    let back = transforms::pt_table_to_connected(&pt).unwrap();
    for d in 1..=3 {
        assert!(back.block(d).unwrap().agrees_with(f.block(d).unwrap()));
    }
    assert_eq!(PtTable::from_json(&pt.to_json()).unwrap(), pt);
}
