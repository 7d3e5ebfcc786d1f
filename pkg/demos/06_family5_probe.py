"""Spectrum of a Family5 instance at n = 12, as reported by the spectrum command."""

import json

from apnspectra.cli import RunConfig, cmd_spectrum

payload, code = cmd_spectrum(RunConfig(command="spectrum", family="family5", params={"k": 4, "s": 5}))
print("exit code", code)
print(json.dumps({k: payload[k] for k in ("n", "values", "nl", "ab", "spectrum")}, indent=1))
