import json

import pytest

from screenline.network import Network, load_network, read_centroids, read_link_table


def test_links_get_dense_ids_and_labels(diamond):
    assert diamond.links[0] == (1, 2)
    assert diamond.link_labels == [1, 2, 3, 4]
    assert diamond.label_of(0) == 1
    assert diamond.labels_of([2, 0]) == [1, 3]
    assert diamond.ids_for_labels([3, 1]) == [0, 2]


def test_od_pairs_are_ordered_centroid_pairs(diamond):
    assert [(w.s, w.t) for w in diamond.od_pairs] == [(1, 4), (4, 1)]


def test_degrees(diamond):
    assert diamond.out_degree(1) == 2
    assert diamond.in_degree(4) == 2
    assert diamond.out_degree(4) == 0
    with pytest.raises(ValueError):
        diamond.out_degree(99)


def test_reachability_with_removals(diamond):
    assert diamond.reachable((), 1, 4)
    assert diamond.reachable({0}, 1, 4)  # the 1->3->4 path survives
    assert not diamond.reachable({0, 1}, 1, 4)
    assert not diamond.reachable({2, 3}, 1, 4)
    assert not diamond.reachable((), 4, 1)
    assert diamond.reachable((), 1, 1)


def test_rejects_self_loops_and_duplicates():
    with pytest.raises(ValueError, match="self-loop"):
        Network(links=[(1, 1)], centroids=[1])
    with pytest.raises(ValueError, match="duplicate link"):
        Network(links=[(1, 2), (1, 2)], centroids=[1, 2])
    with pytest.raises(ValueError, match="unknown centroid"):
        Network(links=[(1, 2)], centroids=[7])


def test_read_link_table_formats(tmp_path):
    csv = tmp_path / "links.csv"
    csv.write_text("init_node,term_node,extra\n1,2,9\n2,3,9\n")
    assert read_link_table(csv) == [(1, 2), (2, 3)]

    tntp = tmp_path / "links.tntp"
    tntp.write_text(
        "<NUMBER OF LINKS> 2\n<END OF METADATA>\n"
        "~ tail head rest ;\n"
        "1 2 0.1 ;\n2 3 0.1 ;\n"
    )
    assert read_link_table(tntp) == [(1, 2), (2, 3)]

    bare = tmp_path / "bare.txt"
    bare.write_text("1 2\n2 3\n")
    assert read_link_table(bare) == [(1, 2), (2, 3)]


def test_read_link_table_errors(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("~ nothing\n")
    with pytest.raises(ValueError, match="no link rows"):
        read_link_table(empty)


def test_read_centroids_formats(tmp_path):
    lines = tmp_path / "c.txt"
    lines.write_text("1\n13\n")
    assert read_centroids(lines) == [1, 13]
    arr = tmp_path / "c.json"
    arr.write_text(json.dumps([1, 13]))
    assert read_centroids(arr) == [1, 13]


def test_load_network_from_files(tmp_path):
    links = tmp_path / "links.txt"
    links.write_text("1 2\n2 3\n")
    cents = tmp_path / "c.txt"
    cents.write_text("1\n3\n")
    net = load_network(links, cents)
    assert net.links == [(1, 2), (2, 3)]
    assert net.centroids == [1, 3]


def test_network_hash_tracks_content(diamond):
    same = Network(links=list(diamond.links), centroids=list(diamond.centroids))
    other = Network(links=[(1, 2), (2, 4), (1, 3), (3, 4)], centroids=[1, 4])
    assert diamond.network_hash() == same.network_hash()
    assert diamond.network_hash() != other.network_hash()
