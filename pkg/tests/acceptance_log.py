"Collects one verdict line per acceptance criterion for the end-of-run summary."

LINES: list[str] = []


def report(number: int, title: str, passed: bool, detail: str, seconds: float) -> str:
    line = f"[{number:2d}] {'PASS' if passed else 'FAIL'}  {title}: {detail} ({seconds:.2f} s)"
    LINES.append(line)
    print(line)
    return line
