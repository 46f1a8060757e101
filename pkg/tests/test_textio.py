import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qslkit.errors import ValidationError
from qslkit.textio import (
    check_hermitian_block,
    format_complex,
    parse_complex,
    read_matrices,
    render_csv,
    render_svg,
    write_matrix,
)

finite = st.floats(allow_nan=False, allow_infinity=False)


class TestComplexTokens:
    @pytest.mark.parametrize(
        "token,value",
        [
            ("1", 1),
            ("-2.5", -2.5),
            ("1e-3", 1e-3),
            ("2i", 2j),
            ("-0.5i", -0.5j),
            ("i", 1j),
            ("-i", -1j),
            ("1+2i", 1 + 2j),
            ("1-i", 1 - 1j),
            ("3.0e2-4.5e-1i", 300 - 0.45j),
            ("1e5j", 1e5j),
            (".5+.25j", 0.5 + 0.25j),
        ],
    )
    def test_parse(self, token, value):
        assert parse_complex(token) == value

    @pytest.mark.parametrize("token", ["", "abc", "1+", "1+2", "i1", "1..2", "nan", "1+2k"])
    def test_reject(self, token):
        with pytest.raises(ValueError):
            parse_complex(token)

    @given(finite, finite)
    def test_round_trip(self, re, im):
        z = complex(re, im)
        assert parse_complex(format_complex(z)) == z


class TestMatrixFiles:
    def test_two_blocks(self):
        text = "# states\n# dim 2\n0.5 0\n0 0.5\n\n# dim 2\n1 0\n0 0\n"
        blocks = read_matrices(text.splitlines(), "f.txt")
        assert len(blocks) == 2 and blocks[1].line == 6
        assert np.array_equal(blocks[0].data, np.eye(2) / 2)

    @given(st.lists(finite, min_size=9, max_size=9), st.lists(finite, min_size=9, max_size=9))
    def test_write_read_round_trip(self, re, im):
        a = (np.array(re) + 1j * np.array(im)).reshape(3, 3)
        buf = io.StringIO()
        write_matrix(buf, a)
        back = read_matrices(buf.getvalue().splitlines())[0].data
        assert np.array_equal(back, a)

    @pytest.mark.parametrize(
        "text,message",
        [
            ("1 0\n0 1\n", "f:1: data before a '# dim N' header"),
            ("# dim 2\n1 0\n", "f:1: block declares dim 2 but has 1 rows"),
            ("# dim 2\n1 0 0\n0 1\n", "f:2: expected 2 entries, found 3"),
            ("# dim 2\n1 x\n0 1\n", "f:2: entry (0, 1) 'x' is not a complex number"),
            ("# dim 2\n1 0\n0 1\n0 0\n", "f:4: more than 2 rows"),
            ("# dim two\n", "f:1: bad dimension 'two'"),
        ],
    )
    def test_errors_name_the_line(self, text, message):
        with pytest.raises(ValidationError, match=message.replace("(", r"\(").replace(")", r"\)")):
            read_matrices(text.splitlines(), "f")

    def test_non_hermitian_entry(self):
        block = read_matrices("# dim 2\n0.5 0.1+0.2i\n0.1+0.2i 0.5\n".splitlines(), "f")[0]
        with pytest.raises(ValidationError, match=r"f:2: entry \(0, 1\) = 0.1\+0.2i is not the conjugate of entry \(1, 0\)"):
            check_hermitian_block(block, "f")


class TestCsv:
    def test_layout(self):
        text = render_csv([("a", 1), ("b", True), ("c", 0.1)], ["x", "y"], [[0.1, 2], [0.30000000000000004, False]])
        assert text == "# a = 1\n# b = true\n# c = 0.1\nx,y\n0.1,2\n0.30000000000000004,false\n"


class TestSvg:
    def test_self_contained(self):
        svg = render_svg("t <1>", "x", [0, 1, 2], [("a", [0, 1, 4]), ("b", [1, float("nan"), 1])])
        assert svg.startswith("<svg xmlns=") and svg.rstrip().endswith("</svg>")
        assert svg.count("<polyline") == 2
        assert "href" not in svg and "&lt;1&gt;" in svg

    def test_deterministic(self):
        args = ("t", "x", [0.0, 0.5], [("a", [1.0, 2.0])])
        assert render_svg(*args) == render_svg(*args)

    def test_flat_series(self):
        assert "<polyline" in render_svg("t", "x", [1.0], [("a", [3.0])])
