"""
명령행 인터페이스 테스트
"""

import json

import pytest
import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from cli import main
from models.diagrams import DIAGRAM_IDS
from models.integrals import INTEGRAL_NAMES


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture(scope="module")
def full_verify(tmp_path_factory):
    """기본 격자 전체 검증 (모듈에서 한 번만 실행)"""
    path = tmp_path_factory.mktemp("verify") / "report.json"
    code = main(["verify", "--m", "1", "--output", str(path)])
    with open(path, encoding="utf-8") as handle:
        return code, json.load(handle)


class TestEnergyCommand:
    """energy 명령 테스트"""

    @pytest.mark.parametrize("g, m, expected", [
        ("1", "1", 0.8125),
        ("4", "2", 2.5),
        ("0.5", "2", 1.1328125),
    ])
    def test_energy(self, capsys, g, m, expected):
        """E = m/2 + g/4 + g²/(16m)"""
        code, out = run(capsys, "energy", "--g", g, "--m", m)
        assert code == 0
        report = json.loads(out)
        assert report["command"] == "energy"
        assert [e["name"] for e in report["entries"]] == ["order_0", "order_1", "order_2", "energy"]
        assert report["entries"][-1]["value"] == pytest.approx(expected, rel=1e-12)

    def test_order(self, capsys):
        """--order 1 은 두 항만"""
        code, out = run(capsys, "energy", "--g", "1", "--order", "1")
        assert code == 0
        entries = json.loads(out)["entries"]
        assert entries[-1]["value"] == pytest.approx(0.75)

    def test_csv(self, capsys):
        """CSV 형식"""
        code, out = run(capsys, "energy", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "name,kind,row,eps,value,analytic,paper_limit,rel_err,pass,message"
        fields = lines[-1].split(",")
        assert fields[:4] == ["energy", "energy", "limit", ""]
        assert float(fields[4]) == pytest.approx(0.8125, rel=1e-12)

    def test_negative_coupling(self, capsys):
        """g < 0 은 인자 오류"""
        with pytest.raises(SystemExit) as info:
            main(["energy", "--g", "-1"])
        assert info.value.code == 2


class TestIntegralCommand:
    """integral 명령 테스트"""

    def test_delta_4(self, capsys):
        """해석 값, 수치 값, 상대 차이"""
        code, out = run(capsys, "integral", "delta_4", "--eps", "0.05")
        assert code == 0
        entry = json.loads(out)["entries"][0]
        assert entry["name"] == "delta_4"
        assert entry["quadrature"][0]["eps"] == 0.05
        assert entry["quadrature"][0]["value"] > 0
        assert entry["relative_gap"] == pytest.approx(
            abs(entry["analytic"] - entry["quadrature"][0]["value"]) / entry["analytic"], rel=1e-9)

    def test_i_singular(self, capsys):
        """I_D 는 음수"""
        code, out = run(capsys, "integral", "i_singular", "--eps", "0.1")
        assert code == 0
        entry = json.loads(out)["entries"][0]
        assert entry["analytic"] < 0
        assert entry["quadrature"][0]["value"] < 0

    def test_unknown_name(self, capsys):
        """알 수 없는 이름은 종료 코드 2"""
        with pytest.raises(SystemExit) as info:
            main(["integral", "bogus"])
        assert info.value.code == 2
        assert "delta_sq" in capsys.readouterr().err

    def test_invalid_eps(self):
        """eps = 0 은 인자 오류"""
        with pytest.raises(SystemExit) as info:
            main(["integral", "delta_sq", "--eps", "0"])
        assert info.value.code == 2

    @pytest.mark.parametrize("tol", ["1e-2", "1e-13"])
    def test_tol_quadrature_range(self, capsys, tol):
        """[1e-12, 1e-4] 밖의 허용 오차는 인자 오류"""
        with pytest.raises(SystemExit) as info:
            main(["integral", "delta_sq", "--tol-quadrature", tol])
        assert info.value.code == 2
        assert "tol-quadrature" in capsys.readouterr().err


class TestVerifyCommand:
    """verify 명령 테스트"""

    def test_single_eps(self):
        """외삽할 수 없는 격자"""
        with pytest.raises(SystemExit) as info:
            main(["verify", "--eps", "0.1"])
        assert info.value.code == 2

    def test_malformed_eps(self):
        """실수가 아닌 격자"""
        with pytest.raises(SystemExit) as info:
            main(["verify", "--eps", "0.2,abc"])
        assert info.value.code == 2

    @pytest.mark.parametrize("command", ["verify", "diagram"])
    def test_tol_quadrature_range(self, command):
        """허용 오차 범위 밖이면 계산 전에 인자 오류"""
        argv = [command] + (["d10_chain_00"] if command == "diagram" else [])
        with pytest.raises(SystemExit) as info:
            main(argv + ["--tol-quadrature", "1e-3"])
        assert info.value.code == 2

    def test_invalid_threads(self, monkeypatch):
        """DIMREG_THREADS 가 정수가 아니면 인자 오류"""
        monkeypatch.setenv("DIMREG_THREADS", "many")
        with pytest.raises(SystemExit) as info:
            main(["verify", "--eps", "0.2,0.1,0.05"])
        assert info.value.code == 2

    def test_deterministic(self, capsys, monkeypatch):
        """같은 인자로 두 번 실행하면 같은 출력"""
        monkeypatch.setenv("DIMREG_THREADS", "2")
        _, first = run(capsys, "verify", "--eps", "0.2,0.1,0.05")
        monkeypatch.setenv("DIMREG_THREADS", "1")
        _, second = run(capsys, "verify", "--eps", "0.2,0.1,0.05")
        assert first == second
        report = json.loads(first)
        assert report["parameters"]["eps"] == [0.2, 0.1, 0.05]

    def test_full_grid_passes(self, full_verify):
        """기본 격자에서 모든 항목 통과"""
        code, report = full_verify
        failed = [e["name"] for e in report["entries"] if not e["pass"]]
        assert failed == []
        assert report["pass"] is True
        assert code == 0

    def test_entry_layout(self, full_verify):
        """적분, 다이어그램, 에너지 계수 순서"""
        _, report = full_verify
        names = [e["name"] for e in report["entries"]]
        assert names == list(INTEGRAL_NAMES) + list(DIAGRAM_IDS) + ["energy_g1", "energy_g2"]
        first = report["entries"][0]
        assert list(first) == [
            "name", "kind", "analytic", "quadrature", "extrapolated",
            "extrapolation_error", "paper_limit", "rel_err", "pass", "message",
        ]
        assert [s["eps"] for s in first["quadrature"]] == [0.2, 0.1, 0.05, 0.025]

    @pytest.mark.parametrize("m", [0.5, 2.0])
    def test_mass_scaled_grid_passes(self, tmp_path, full_verify, m):
        """m = 0.5, 2 에서도 같은 판정, 극한값은 m 척도"""
        _, base = full_verify
        path = tmp_path / "report.json"
        code = main(["verify", "--m", str(m), "--output", str(path)])
        report = json.loads(path.read_text(encoding="utf-8"))
        assert code == 0
        assert report["pass"] is True
        assert report["parameters"]["degree"] == 3
        assert [e["pass"] for e in report["entries"]] == [e["pass"] for e in base["entries"]]
        g1, g2 = report["entries"][-2:]
        assert g1["extrapolated"] == pytest.approx(0.25, rel=1e-3)
        assert g2["extrapolated"] == pytest.approx(1.0 / (16.0 * m), rel=1e-3)
        assert g2["analytic"] == pytest.approx(1.0 / (16.0 * m), rel=1e-12)

    def test_energy_closure(self, full_verify):
        """외삽된 다이어그램으로 재구성한 g² 계수 1/16"""
        _, report = full_verify
        g2 = report["entries"][-1]
        assert g2["extrapolated"] == pytest.approx(1.0 / 16.0, rel=1e-3)
        assert g2["analytic"] == pytest.approx(1.0 / 16.0, rel=1e-12)


class TestDiagramCommand:
    """diagram 명령 테스트"""

    def test_watermelon(self, capsys, tmp_path):
        """외삽 결과를 파일로 저장"""
        path = tmp_path / "d12.csv"
        code, out = run(capsys, "diagram", "d12_watermelon_mixed", "--format", "csv", "--output", str(path))
        assert code == 0
        assert out == ""
        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 1 + 4 + 1
        assert lines[-1].startswith("d12_watermelon_mixed,diagram,limit,")

    def test_unknown_diagram(self):
        """알 수 없는 다이어그램"""
        with pytest.raises(SystemExit) as info:
            main(["diagram", "d14_jacobian"])
        assert info.value.code == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
