"""Line-oriented ``[section]`` / ``key = value`` file parser.

The format used by material catalogues and scenario files:

* blank lines and lines starting with ``#`` are ignored,
* ``[name]`` opens a section (sections may repeat; order is kept),
* ``key = value`` adds an entry to the current section.

Every section and entry remembers its 1-based source line so loaders can
raise ConfigError pointing at the exact line when a value fails to resolve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError


@dataclass
class Entry:
    value: str
    line: int


@dataclass
class Section:
    name: str
    line: int
    path: str
    entries: dict[str, Entry] = field(default_factory=dict)

    def error(self, message: str, key: str | None = None) -> ConfigError:
        line = self.entries[key].line if key in self.entries else self.line
        return ConfigError(message, path=self.path, line=line)

    def has(self, key: str) -> bool:
        return key in self.entries

    def get_str(self, key: str, default: str | None = None) -> str:
        if key not in self.entries:
            if default is None:
                raise self.error(f"missing required key '{key}' in [{self.name}]")
            return default
        return self.entries[key].value

    def get_float(self, key: str, default: float | None = None) -> float:
        if key not in self.entries:
            if default is None:
                raise self.error(f"missing required key '{key}' in [{self.name}]")
            return default
        raw = self.entries[key].value
        try:
            return float(raw)
        except ValueError:
            raise self.error(f"expected a number for '{key}', got '{raw}'", key)

    def get_int(self, key: str, default: int | None = None) -> int:
        if key not in self.entries:
            if default is None:
                raise self.error(f"missing required key '{key}' in [{self.name}]")
            return default
        raw = self.entries[key].value
        try:
            return int(raw)
        except ValueError:
            raise self.error(f"expected an integer for '{key}', got '{raw}'", key)

    def get_bool(self, key: str, default: bool | None = None) -> bool:
        if key not in self.entries:
            if default is None:
                raise self.error(f"missing required key '{key}' in [{self.name}]")
            return default
        raw = self.entries[key].value.lower()
        if raw in ("true", "yes", "on", "1"):
            return True
        if raw in ("false", "no", "off", "0"):
            return False
        raise self.error(f"expected true/false for '{key}', got '{raw}'", key)

    def reject_unknown(self, allowed: set[str]) -> None:
        for key, entry in self.entries.items():
            if key not in allowed:
                raise ConfigError(
                    f"unknown key '{key}' in [{self.name}]",
                    path=self.path, line=entry.line)


def parse_config(text: str, path: str = "<config>") -> list[Section]:
    """Parse ``text`` into an ordered list of sections."""
    sections: list[Section] = []
    current: Section | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if not name:
                raise ConfigError("empty section name", path=path, line=lineno)
            current = Section(name=name, line=lineno, path=path)
            sections.append(current)
            continue
        if "=" not in line:
            raise ConfigError(
                f"expected 'key = value' or '[section]', got '{line}'",
                path=path, line=lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError("empty key", path=path, line=lineno)
        if current is None:
            raise ConfigError(
                f"entry '{key}' appears before any [section]",
                path=path, line=lineno)
        if key in current.entries:
            raise ConfigError(
                f"duplicate key '{key}' in [{current.name}]",
                path=path, line=lineno)
        current.entries[key] = Entry(value=value, line=lineno)
    return sections
