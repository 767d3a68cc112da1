import yaml

from dataclasses import asdict, fields
from pathlib import Path

from entities.errors import UsageError

from main.config import ConfigDirectory


class YamlRecord:
	files: Path = ConfigDirectory

	@classmethod
	def GetFilePath(cls, name: str) -> Path:
		candidate = Path(name)
		if candidate.suffix in ('.yaml', '.yml') or candidate.is_file():
			return candidate
		return cls.files / Path(name.replace(' ', '_') + '.yaml')

	@classmethod
	def FromDict(cls, data: dict):
		known = {f.name for f in fields(cls)}
		unknown = set(data) - known
		if unknown:
			raise UsageError(f"Unknown {cls.__name__} keys: {sorted(unknown)}")
		return cls(**data)

	@classmethod
	def Load(cls, name: str, **overrides):
		path = cls.GetFilePath(name)
		if not path.is_file():
			raise UsageError(f"No {cls.__name__} file at {path}")
		with path.open('r') as file:
			try:
				data = yaml.safe_load(file) or {}
			except yaml.YAMLError as error:
				raise UsageError(f"{path} is not valid YAML: {error}") from None
		if not isinstance(data, dict):
			raise UsageError(f"{path} must hold a mapping, found {type(data).__name__}")
		data.update({k: v for k, v in overrides.items() if v is not None})
		return cls.FromDict(data)

	def Dict(self) -> dict:
		return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}

	def Save(self, name: str) -> Path:
		path = self.GetFilePath(name)
		path.parent.mkdir(parents=True, exist_ok=True)
		with path.open('w') as file:
			yaml.dump(self.Dict(), file, allow_unicode=True, sort_keys=False)
		return path
