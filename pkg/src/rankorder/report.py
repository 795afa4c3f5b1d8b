import typing as t

import attr

from . import __version__, util
from .config import converter
from .fit import ComparisonReport, FitReport
from .models import MODEL_TYPES
from .series import RankedSeries


def _unstructure_params(params) -> t.Dict[str, t.Any]:
    return {"model": params.model.value, **attr.asdict(params)}


for _params_cls in MODEL_TYPES.values():
    converter.register_unstructure_hook(_params_cls, _unstructure_params)


@attr.s(auto_attribs=True, frozen=True, kw_only=True)
class ReportDocument:
    input_digest: str
    series: t.Dict[str, t.Any]
    payload: t.Union[FitReport, ComparisonReport]
    warnings: t.Tuple[str, ...] = ()
    tool_version: str = __version__

    @classmethod
    def create(
        cls,
        data: bytes,
        series: RankedSeries,
        payload: t.Union[FitReport, ComparisonReport],
        warnings: t.Sequence[str] = (),
    ) -> "ReportDocument":
        return cls(
            input_digest=util.digest(data),
            series=series.summary(),
            payload=payload,
            warnings=tuple(warnings),
        )

    def to_dict(self) -> t.Dict[str, t.Any]:
        key = "comparison" if isinstance(self.payload, ComparisonReport) else "fit"
        return {
            "tool_version": self.tool_version,
            "input_digest": self.input_digest,
            "series": dict(self.series),
            key: converter.unstructure(self.payload),
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return util.dumps_sorted(self.to_dict()) + "\n"
