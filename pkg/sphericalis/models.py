from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Any, Dict, List, Literal, Optional
from enum import Enum

# Enums for better type safety
class RootKind(str, Enum):
    G = "G"
    T_SPLIT = "T-split"
    T_NONSPLIT = "T-nonsplit"
    U_PSI = "U-psi"

class FeTag(str, Enum):
    U_RAISE = "U-raise"
    U_LOWER = "U-lower"
    U_PSI = "U-psi"
    T_SPLIT_UNRAM = "T-split-unram"
    T_SPLIT_RAM = "T-split-ram"
    T_NONSPLIT_UNRAM = "T-nonsplit-unram"
    T_NONSPLIT_RAM = "T-nonsplit-ram"
    N_SPLIT_INT_UNRAM = "N-split-int-unram"
    N_SPLIT_INT_RAM = "N-split-int-ram"
    N_NONSPLIT_INT_UNRAM = "N-nonsplit-int-unram"
    N_NONSPLIT_INT_RAM = "N-nonsplit-int-ram"
    N_NONINTEGRAL = "N-nonintegral"

class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"

class CliStatus(str, Enum):
    OK = "ok"
    FAIL = "fail"
    ERROR = "error"

# Document Models
class AmbientSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    cartan: Optional[List[List[int]]] = Field(None, description="Matrice di Cartan del gruppo ambiente")
    pos_coroot_rho_pairings: Optional[List[int]] = Field(None, description="Valori <α̌,ρ> sulle coradici positive (solo per Q)")

    @model_validator(mode="after")
    def one_source(self):
        if self.cartan is None and self.pos_coroot_rho_pairings is None:
            raise ValueError("ambient needs either cartan or pos_coroot_rho_pairings")
        if self.cartan is not None:
            n = len(self.cartan)
            if any(len(row) != n for row in self.cartan):
                raise ValueError("cartan must be a square matrix")
        return self

class SphericalRootSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    gamma: List[int] = Field(..., description="Radice sferica normalizzata (peso)")
    cogamma: List[int] = Field(..., description="Coradice sferica, coordinate raddoppiate")
    kind: RootKind = Field(..., description="Tipo della radice sferica")

class ThetaTripleSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    coweight: List[int] = Field(..., description="Copeso θ̌, coordinate raddoppiate")
    sign: Literal[1, -1] = Field(..., description="Segno σ")
    r2: int = Field(..., description="Esponente 2r, con q^{-r} = t^{r2}")

class DatumDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., description="Nome del dato sferico")
    affine: bool = Field(..., description="La varietà è affine")
    twisted: bool = Field(..., description="Dato twistato (X, L_Ψ): costante c sospesa")
    rank: int = Field(..., description="Rango del reticolo Λ_X", ge=1)
    lattice_scale: Literal[2] = Field(..., description="Scala del reticolo raddoppiato (sempre 2)")
    ambient: AmbientSpec = Field(..., description="Dati del gruppo ambiente G")
    spherical_roots: List[SphericalRootSpec] = Field(..., description="Radici sferiche semplici")
    theta_plus: List[ThetaTripleSpec] = Field(..., description="Multinsieme Θ⁺ dei colori virtuali pesati")
    colors: List[List[int]] = Field(..., description="Valutazioni dei colori, generatori del cono 𝒯")
    rho_pX: List[int] = Field(..., description="Accoppiamenti raddoppiati con ρ_{P(X)} sulla base del reticolo")

class PathStepSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    root_index: int = Field(..., description="Indice della radice semplice ambiente", ge=0)
    case: FeTag = Field(..., description="Caso dell'equazione funzionale")
    params: Dict[str, Any] = Field(default_factory=dict, description="Parametri specifici del caso")

class RestrictionSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    matrix: List[List[int]] = Field(..., description="Mappa dal reticolo ambiente (raddoppiato) al reticolo di X")
    t_shift: Optional[List[int]] = Field(None, description="Peso del twist non ramificato applicato prima della restrizione")

class PathDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = Field(None, description="Nome del cammino")
    ambient: List[List[int]] = Field(..., description="Matrice di Cartan ambiente")
    steps: List[PathStepSpec] = Field(..., description="Passi nell'ordine di applicazione")
    restriction: Optional[RestrictionSpec] = Field(None, description="Restrizione al toro di X")
    delta: Optional[List[int]] = Field(None, description="Punto delta sul reticolo ristretto, per la relazione di induzione")

# Report Models
class CheckResult(BaseModel):
    name: str = Field(..., description="Nome del controllo o del target")
    status: CheckStatus = Field(..., description="Esito")
    detail: str = Field("", description="Dettaglio diagnostico")
    citation: Optional[str] = Field(None, description="Riferimento della formula attesa")

class ValidationReport(BaseModel):
    datum: str = Field(..., description="Nome del dato validato")
    checks: List[CheckResult] = Field(default_factory=list, description="Esiti per controllo")

    @property
    def passed(self) -> bool:
        return all(c.status != CheckStatus.FAIL for c in self.checks)

    def failed(self) -> List[str]:
        return [c.name for c in self.checks if c.status == CheckStatus.FAIL]

class RegressionReport(BaseModel):
    fixture: str = Field(..., description="Nome della fixture")
    results: List[CheckResult] = Field(default_factory=list, description="Esiti per target")

    @property
    def passed(self) -> bool:
        return all(c.status != CheckStatus.FAIL for c in self.results)

class OracleReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    case: str = Field(..., description="Caso verificato")
    p: int = Field(..., description="Primo residuo")
    samples: List[str] = Field(default_factory=list, description="Campioni del carattere")
    max_rel_err: float = Field(..., description="Massimo errore relativo", ge=0)
    passed: bool = Field(..., alias="pass", description="Esito complessivo")

class CliReport(BaseModel):
    command: str = Field(..., description="Sottocomando eseguito")
    status: CliStatus = Field(..., description="Esito")
    payload: Optional[Any] = Field(None, description="Dati strutturati del comando")
    diagnostics: List[str] = Field(default_factory=list, description="Messaggi diagnostici")

    @model_validator(mode="after")
    def ok_has_payload(self):
        if self.status == CliStatus.OK and self.payload is None:
            raise ValueError("status ok requires a payload")
        return self
